import os
import subprocess
import sys

import numpy as np
import pytest

from masonry_beam import BeamSpec, LoadCaseA, LoadCaseB, SolverSettings, solve_case_a, solve_case_b
from masonry_beam import _kernels

needs_numba = pytest.mark.skipif(not _kernels._HAVE_NUMBA, reason="numba not installed")


def _state(beam, nr):
    N = beam.force_from_euler_ratio(nr)
    return -N, beam.axial_state(N)


@needs_numba
class TestBackendsAgree:
    @pytest.mark.parametrize("split", [False, True])
    def test_picard_step(self, beam, split):
        n_abs, s = _state(beam, 0.2)
        x = np.linspace(0, beam.L, 1001)
        rng = np.random.default_rng(3)
        y = -np.cumsum(rng.uniform(0, 2e-5, x.size))
        y[0] = 0.0
        e, H = (0.0, 0.5 * n_abs * beam.h / (2 * beam.L)) if split else (0.2 * beam.h, 0.0)
        out = [_kernels.picard_step(x, y, n_abs, e, H, beam.L, beam.EJ, s.alpha, s.M_el, s.M_max,
                                    split=split, backend=b) for b in ("numpy", "numba")]
        np.testing.assert_allclose(out[0][0], out[1][0], rtol=1e-12, atol=1e-18)
        np.testing.assert_allclose(out[0][1], out[1][1], rtol=1e-12)
        assert out[0][3] == out[1][3]
        if split:
            assert out[0][2] == pytest.approx(out[1][2], abs=1e-11 * beam.L)

    def test_relative_change(self):
        rng = np.random.default_rng(5)
        a, b = rng.normal(size=500), rng.normal(size=500)
        b[:10] = 0.0
        assert _kernels.relative_change(a, b, 1e-15, backend="numpy") == pytest.approx(
            _kernels.relative_change(a, b, 1e-15, backend="numba"), rel=1e-15)

    def test_solvers(self, beam, settings):
        ca = LoadCaseA(beam.force_from_euler_ratio(0.15), 0.2 * beam.h)
        ra = [solve_case_a(ca, beam, settings, backend=b) for b in ("numpy", "numba")]
        assert ra[0].iterations == ra[1].iterations
        assert ra[0].f_a == pytest.approx(ra[1].f_a, rel=1e-12)
        N = beam.force_from_euler_ratio(0.15)
        cb = LoadCaseB(N, 0.5 * -N * beam.h / (2 * beam.L))
        rb = [solve_case_b(cb, beam, settings, backend=b) for b in ("numpy", "numba")]
        assert rb[0].f_a == pytest.approx(rb[1].f_a, rel=1e-12)
        assert rb[0].x0 == pytest.approx(rb[1].x0, abs=1e-10)

    def test_capacity_flag(self, beam):
        n_abs, s = _state(beam, 0.2)
        x = np.linspace(0, beam.L, 201)
        y = np.zeros_like(x)
        for b in ("numpy", "numba"):
            *_, ok = _kernels.picard_step(x, y, n_abs, 0.499 * beam.h, 0.1 * n_abs, beam.L, beam.EJ,
                                          s.alpha, s.M_el, s.M_max, backend=b)
            assert not ok


def test_unknown_backend(beam):
    with pytest.raises(ValueError):
        solve_case_a(LoadCaseA(-1e4, 0.01), beam, backend="fortran")


@pytest.mark.parametrize("flag,expected", [("numpy", "numpy"), ("numba", "numba" if _kernels._HAVE_NUMBA else "numpy")])
def test_environment_flag(flag, expected):
    env = dict(os.environ, MASONRY_BEAM_KERNELS=flag)
    out = subprocess.run([sys.executable, "-c", "from masonry_beam import _kernels; print(_kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == expected
