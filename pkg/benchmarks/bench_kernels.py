"""Wall-clock comparison of the numba and numpy kernel backends.

    python3 benchmarks/bench_kernels.py [--grid-n 2000] [--repeat 5]

Times a single sweep of the deflection iteration, a full case (b) solve and
a collapse-load search on each backend, and checks the results agree.
"""

import argparse
import statistics
import time

from masonry_beam import BeamSpec, LoadCaseA, LoadCaseB, SolverSettings, collapse_horizontal_load, solve_case_a, solve_case_b
from masonry_beam import _kernels


def best_of(func, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = func()
        times.append(time.perf_counter() - t0)
    return min(times), statistics.median(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--grid-n", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    if not _kernels._HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    beam = BeamSpec(b=0.4, h=0.4, L=4.0, E=3e9)
    settings = SolverSettings(n=args.grid_n)
    N = beam.force_from_euler_ratio(0.2)
    case_a = LoadCaseA(N, 0.2 * beam.h)
    case_b = LoadCaseB(N, 0.4 * -N * beam.h / (2 * beam.L))

    jobs = {
        "case (a) solve": lambda b: solve_case_a(case_a, beam, settings, backend=b).f_a,
        "case (b) solve": lambda b: solve_case_b(case_b, beam, settings, backend=b).f_a,
        "collapse search": lambda b: collapse_horizontal_load(N, beam, settings, backend=b).ratio,
    }
    # warm up the JIT cache
    for job in jobs.values():
        job("numba")

    print(f"grid n = {args.grid_n}, best / median of {args.repeat}")
    print(f"{'job':<18}{'numpy [ms]':>22}{'numba [ms]':>22}{'speed-up':>10}")
    for name, job in jobs.items():
        np_best, np_med, np_out = best_of(lambda: job("numpy"), args.repeat)
        nb_best, nb_med, nb_out = best_of(lambda: job("numba"), args.repeat)
        if abs(np_out - nb_out) > 1e-10 * abs(np_out):
            raise SystemExit(f"{name}: backends disagree ({np_out!r} vs {nb_out!r})")
        print(f"{name:<18}{np_best * 1e3:>11.2f} /{np_med * 1e3:>8.2f}"
              f"{nb_best * 1e3:>13.2f} /{nb_med * 1e3:>7.2f}{np_best / nb_best:>9.1f}x")


if __name__ == "__main__":
    main()
