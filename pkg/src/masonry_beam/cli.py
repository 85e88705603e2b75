"""Command-line front end: one subcommand per family of response curves.

Each subcommand writes one CSV file whose first lines are ``#`` comments
recording the resolved configuration. Exit status:

    0  success
    2  invalid configuration or arguments
    3  some sweep point did not converge (rerun with --allow-partial to keep them)
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .closed_form import (
    LoadCaseA,
    LoadCaseB,
    case_a_tip_deflection,
    case_b_tip_deflection,
    sample_fractions,
)
from .config import RunConfig, load_config
from .csvio import gnuplot_script, render_csv
from .dynamics import frequency_curve_a, frequency_curve_b
from .exceptions import ConfigError
from .second_order import collapse_horizontal_load, map_points, solve_case_a, solve_case_b, stability_curve

CONVERGED = "converged"


def _default(value, fallback):
    return fallback if value is None else value


# --------------------------------------------------------------------------
# subcommands: each returns (columns, rows, gnuplot x, gnuplot y-list)
# --------------------------------------------------------------------------

def cmd_case_a_curves(cfg: RunConfig):
    """|f_a|/L against |N|/gamma at fixed e, and against e at fixed |N|/gamma."""
    beam, settings = cfg.beam, cfg.settings
    geometric = _default(cfg.geometric, False)
    e_list = _default(cfg.e_over_h, [0.0, 1 / 8, 1 / 6, 1 / 5, 1 / 4, 1 / 3])
    g_list = _default(cfg.N_over_gamma, [0.25, 0.5, 1.0])
    points = []
    for eh in e_list:
        for g in np.linspace(0.0, cfg.N_over_gamma_max, cfg.samples):
            points.append(("load", float(eh), float(g)))
    for g in g_list:
        for eh in np.linspace(0.0, cfg.e_over_h_max, cfg.samples):
            points.append(("eccentricity", float(eh), float(g)))

    def point(p):
        series, eh, g = p
        e = eh * beam.h
        fa = 0.0 if g == 0.0 else abs(case_a_tip_deflection(LoadCaseA(beam.force_from_gamma_ratio(g), e), beam))
        row = {"series": series, "e_over_h": eh, "N_over_gamma": g, "e": e, "fa": fa,
               "fa_over_L": fa / beam.L, "status": CONVERGED}
        if geometric:
            if g == 0.0:
                row["fa_over_L_second_order"] = 0.0
            else:
                rep = solve_case_a(LoadCaseA(beam.force_from_gamma_ratio(g), e), beam, settings)
                row["status"] = rep.status.value
                if rep.converged:
                    row["fa_over_L_second_order"] = abs(rep.f_a) / beam.L
        return row

    rows = map_points(point, points, cfg.workers)
    columns = ["series", "e_over_h", "N_over_gamma", "e", "fa", "fa_over_L", "fa_over_L_second_order", "status"]
    return columns, rows, "N_over_gamma", ["fa_over_L"]


def cmd_stability(cfg: RunConfig):
    """(u/h, |N|/N_E) equilibrium paths of case (a) up to the critical load."""
    if cfg.geometric is False:
        raise ConfigError("case-a-stability needs geometric nonlinearity (--geometric on)")
    beam, settings = cfg.beam, cfg.settings
    rows = []
    for eh in _default(cfg.e_over_h, [1 / 4, 1 / 5, 1 / 6, 1 / 8]):
        if eh == 0:
            raise ConfigError("e_over_h: 0 has no finite critical point below N_E; use e_over_h > 0")
        rows += stability_curve(eh, beam, settings, samples=cfg.samples, tol=cfg.bisection_tol, workers=cfg.workers)
    columns = ["e_over_h", "N_over_NE", "u_over_h", "fa_over_L", "fa_over_L_first_order",
               "iterations", "critical", "status"]
    return columns, rows, "u_over_h", ["N_over_NE"]


def cmd_pushover(cfg: RunConfig):
    """(|f_a|/L, H/H_max): elastic, masonry-like and second-order variants."""
    beam, settings = cfg.beam, cfg.settings
    geometric = _default(cfg.geometric, True)
    points = []
    for abar in _default(cfg.alphabar, [9e-3]):
        N = beam.force_from_alphabar(abar)
        if geometric and -N >= beam.N_E:
            raise cfg.error("alphabar", f"{abar} gives |N|/N_E = {-N / beam.N_E:.4g} >= 1 for this beam")
        for r in sample_fractions(cfg.samples, cfg.H_over_Hmax_max, cfg.refine):
            points.append((float(abar), N, float(r)))

    def point(p):
        abar, N, r = p
        H = r * (-N) * beam.h / (2.0 * beam.L)
        row = {"alphabar": abar, "N_over_NE": -N / beam.N_E, "H_over_Hmax": r, "status": CONVERGED}
        if cfg.first_order_reference:
            row["fa_over_L_elastic"] = abar * r
            row["fa_over_L_masonry"] = abs(case_b_tip_deflection(LoadCaseB(N, H), beam)) / beam.L
        if geometric:
            rep = solve_case_b(LoadCaseB(N, H), beam, settings)
            row["iterations"] = rep.iterations
            row["status"] = rep.status.value
            if rep.converged:
                row["fa_over_L_geometric"] = abs(rep.f_a) / beam.L
        return row

    rows = map_points(point, points, cfg.workers)
    columns = ["alphabar", "N_over_NE", "H_over_Hmax", "fa_over_L_elastic", "fa_over_L_masonry",
               "fa_over_L_geometric", "iterations", "status"]
    return columns, rows, "fa_over_L_masonry", ["H_over_Hmax"]


def cmd_collapse(cfg: RunConfig):
    """(|N|/N_E, H_g/H_max) from the second-order collapse search."""
    if cfg.geometric is False:
        raise ConfigError("collapse-load needs geometric nonlinearity (--geometric on)")
    beam, settings = cfg.beam, cfg.settings
    ratios = _default(cfg.N_over_NE, [0.01, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.5, 0.6])

    def point(nr):
        c = collapse_horizontal_load(beam.force_from_euler_ratio(nr), beam, settings, cfg.bisection_tol)
        H_max = c.H_g / c.ratio if c.ratio > 0 else nr * beam.N_E * beam.h / (2 * beam.L)
        return {
            "N_over_NE": float(nr),
            "Hg_over_Hmax": c.ratio,
            "Hg": c.H_g,
            "bracket_over_Hmax": (c.bracket[1] - c.bracket[0]) / H_max,
            "iterations": c.report.iterations,
            "upper_status": c.upper_status.value,
            "status": c.report.status.value,
        }

    rows = map_points(point, ratios, cfg.workers)
    columns = ["N_over_NE", "Hg_over_Hmax", "Hg", "bracket_over_Hmax", "iterations", "upper_status", "status"]
    return columns, rows, "N_over_NE", ["Hg_over_Hmax"]


def _frequency(cfg: RunConfig, curve, default_ratios, abscissa, grid):
    beam, settings = cfg.beam, cfg.settings
    geometric = _default(cfg.geometric, True)
    rows = []
    ratios = _default(cfg.N_over_NE, default_ratios)
    if geometric:
        for nr in ratios:
            for r in curve(beam, nr, grid, settings, True, cfg.workers):
                r["geometric"] = True
                rows.append(r)
    if cfg.first_order_reference or not geometric:
        for nr in ratios:
            for r in curve(beam, nr, grid, settings, False, cfg.workers):
                r["geometric"] = False
                rows.append(r)
    columns = ["N_over_NE", "geometric", abscissa, "ratio", "stiffness_ratio", "status"]
    return columns, rows, abscissa, ["ratio"]


def cmd_frequency_a(cfg: RunConfig):
    """omega/omega_el against e/h."""
    grid = np.linspace(0.0, cfg.e_over_h_max, cfg.samples)
    return _frequency(cfg, frequency_curve_a, [0.1, 0.2, 0.3], "e_over_h", grid)


def cmd_frequency_b(cfg: RunConfig):
    """omega/omega_el against H/H_max."""
    grid = sample_fractions(cfg.samples, cfg.H_over_Hmax_max, cfg.refine)
    return _frequency(cfg, frequency_curve_b, [0.2, 0.3, 0.4], "H_over_Hmax", grid)


COMMANDS = {
    "case-a-curves": cmd_case_a_curves,
    "case-a-stability": cmd_stability,
    "pushover": cmd_pushover,
    "collapse-load": cmd_collapse,
    "frequency-a": cmd_frequency_a,
    "frequency-b": cmd_frequency_b,
}

# a negative one-term frequency estimate is reported (ratio 0), not a solver failure
OK_STATUSES = {CONVERGED, "negative_omega2"}


# --------------------------------------------------------------------------

def _on_off(value: str) -> bool:
    if value not in ("on", "off"):
        raise argparse.ArgumentTypeError("expected 'on' or 'off'")
    return value == "on"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="masonry-beam", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, func in COMMANDS.items():
        p = sub.add_parser(name, help=func.__doc__.splitlines()[0])
        p.add_argument("--config", metavar="PATH", help="JSON run configuration")
        p.add_argument("--out", metavar="PATH", default="-", help="CSV output path ('-' for stdout)")
        p.add_argument("--geometric", type=_on_off, metavar="{on,off}", help="geometric nonlinearity")
        p.add_argument("--epsilon", type=float, help="relative residual threshold, percent")
        p.add_argument("--max-iter", type=int, dest="max_iter", help="iteration cap per solve")
        p.add_argument("--grid-n", type=int, dest="n", help="grid intervals on [0, L]")
        p.add_argument("--workers", type=int, help="worker threads for sweeps")
        p.add_argument("--allow-partial", action="store_true", default=None, dest="allow_partial",
                       help="emit non-converged points with their status instead of failing")
        p.add_argument("--gnuplot", action="store_true", default=None,
                       help="also write a gnuplot script next to the CSV")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    overrides = {k: getattr(args, k) for k in ("geometric", "epsilon", "max_iter", "n", "workers",
                                               "allow_partial", "gnuplot")}
    try:
        cfg = load_config(args.config, overrides)
        columns, rows, gx, gy = COMMANDS[args.command](cfg)
    except (ConfigError, ValueError) as exc:
        print(f"masonry-beam: error: {exc}", file=sys.stderr)
        return 2

    bad = [r for r in rows if r.get("status") not in OK_STATUSES]
    if bad and not cfg.allow_partial:
        print(f"masonry-beam: {len(bad)} of {len(rows)} points did not converge "
              f"(first: {bad[0]}); use --allow-partial to emit them", file=sys.stderr)
        return 3

    text = render_csv(args.command, columns, rows, cfg.resolved())
    if args.out == "-":
        sys.stdout.write(text)
    else:
        out = Path(args.out)
        out.write_text(text, encoding="utf-8")
        if cfg.gnuplot:
            out.with_suffix(".gp").write_text(gnuplot_script(str(out), gx, gy, columns, args.command),
                                              encoding="utf-8")
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
