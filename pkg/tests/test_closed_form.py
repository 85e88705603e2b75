import math

import numpy as np
import pytest
from scipy.integrate import quad

from masonry_beam import (
    BeamSpec,
    DomainNearCapacity,
    LoadCaseA,
    LoadCaseB,
    SectionCapacityExceeded,
    case_a_curvature,
    case_a_tip_deflection,
    case_b_deflection,
    case_b_tip_deflection,
    pushover_curve_first_order,
)
from masonry_beam.closed_form import case_a_deflection, case_b_constants, sample_fractions


def case_b(beam, alphabar, h_ratio):
    N = beam.force_from_alphabar(alphabar)
    H = h_ratio * (-N) * beam.h / (2 * beam.L)
    return LoadCaseB(N, H)


def curvature_eq17(case, beam):
    """Curvature along the axis for case (b), straight from the moment H (L - x)."""
    a = beam.axial_state(case.N).alpha
    k = case.H / beam.EJ

    def chi(x):
        m = k * (beam.L - x)
        return m if m <= a else 4 * a**3 / (m - 3 * a) ** 2

    return chi


def quadrature_deflection(case, beam, x):
    """y(x) = -int_0^x (x - s) chi(s) ds, split at the crack tip."""
    chi = curvature_eq17(case, beam)
    a = beam.axial_state(case.N).alpha
    x0 = max(beam.L - a / (case.H / beam.EJ), 0.0)
    pts = [x0] if 0 < x0 < x else None
    val, _ = quad(lambda s: (x - s) * chi(s), 0.0, x, points=pts, epsabs=0, epsrel=1e-13, limit=200)
    return -val


class TestCaseA:
    def test_curvature_examples(self, beam):
        N = -1.0e5
        a = beam.axial_state(N).alpha
        assert case_a_curvature(LoadCaseA(N, 0.0), beam) == 0.0
        assert case_a_curvature(LoadCaseA(N, beam.h / 6), beam) == pytest.approx(a, rel=1e-14)
        assert case_a_curvature(LoadCaseA(N, beam.h / 3), beam) == pytest.approx(4 * a, rel=1e-14)

    @pytest.mark.parametrize("eh", [0.17, 0.2, 0.3, 0.45])
    def test_cracked_branch_formula(self, beam, eh):
        N = -1.0e5
        a = beam.axial_state(N).alpha
        assert case_a_curvature(LoadCaseA(N, eh * beam.h), beam) == pytest.approx(
            (4 * a / 9) / (1 - 2 * eh) ** 2, rel=1e-13)

    def test_capacity(self, beam):
        with pytest.raises(SectionCapacityExceeded):
            case_a_curvature(LoadCaseA(-1.0e5, beam.h / 2), beam)

    @pytest.mark.parametrize("N", [-1e3, -1e5, -7e5])
    def test_linear_value_at_kernel_edge(self, beam, N):
        fa = case_a_tip_deflection(LoadCaseA(N, beam.h / 6), beam)
        assert fa < 0
        assert abs(fa) == pytest.approx(-N * beam.h * beam.L**2 / (12 * beam.EJ), rel=1e-14)

    def test_linear_branch(self, beam):
        N, e = -2e5, 0.1 * beam.h
        assert abs(case_a_tip_deflection(LoadCaseA(N, e), beam)) == pytest.approx(
            -N * e * beam.L**2 / (2 * beam.EJ), rel=1e-14)

    def test_dimensionless_eq8(self, beam):
        N = beam.force_from_gamma_ratio(1.0)
        fa = case_a_tip_deflection(LoadCaseA(N, beam.h / 5), beam)
        assert abs(fa) / beam.L == pytest.approx(1 / (9 * 0.36), rel=1e-14)

    @pytest.mark.parametrize("eh", [0.1, 0.2, 0.3])
    def test_proportional_to_load(self, beam, eh):
        ratios = np.array([0.1, 0.2, 0.5, 1.0])
        fa = np.array([abs(case_a_tip_deflection(LoadCaseA(beam.force_from_gamma_ratio(g), eh * beam.h), beam))
                       for g in ratios])
        np.testing.assert_allclose(fa / ratios, fa[0] / ratios[0], rtol=1e-13)

    def test_field_is_parabola(self, beam):
        fld = case_a_deflection(LoadCaseA(-1e5, 0.3 * beam.h), beam, n=100)
        assert fld.y[0] == 0.0
        assert fld.tip == pytest.approx(case_a_tip_deflection(LoadCaseA(-1e5, 0.3 * beam.h), beam))


class TestCaseB:
    def test_zero_load(self, beam):
        fld = case_b_deflection(LoadCaseB(-1e5, 0.0), beam)
        assert np.all(fld.y == 0)

    def test_elastic_limit_value(self, beam):
        case = case_b(beam, 9e-3, 1 / 3)
        assert case.H == pytest.approx(case.H_min(beam))
        k = case.H / beam.EJ
        assert abs(case_b_tip_deflection(case, beam)) == pytest.approx(k * beam.L**3 / 3, rel=1e-12)

    @pytest.mark.parametrize("abar", [1e-3, 9e-3, 3e-2])
    def test_dimensionless_continuity_at_kbar_eq_alphabar(self, abar):
        # log term vanishes when zeta_bar = 2 alpha_bar
        kbar, zbar = abar, 2 * abar
        f = (abar**3 / (3 * kbar**2 * zbar)) * (17 * kbar - 15 * abar - 12 * zbar * math.log(2 * abar / zbar))
        assert f == pytest.approx(abar / 3, rel=1e-14)

    def test_just_above_h_min_matches_elastic(self, beam):
        case = case_b(beam, 9e-3, 1 / 3 * (1 + 1e-7))
        k = case.H / beam.EJ
        assert abs(case_b_tip_deflection(case, beam)) == pytest.approx(k * beam.L**3 / 3, rel=1e-6)

    def test_constants_explicit_forms(self, beam):
        # explicit forms of the two cubic-branch constants:
        # the slope coefficient and the constant term
        case = case_b(beam, 9e-3, 0.6)
        a = beam.axial_state(case.N).alpha
        k, L = case.H / beam.EJ, beam.L
        z = 3 * a - k * L
        c1, c2, c3, c4, x0 = case_b_constants(case, beam)
        assert c1 == pytest.approx(-4 * a**3 / k**2 * math.log(z), rel=1e-14)
        assert c2 == pytest.approx(-4 * a**3 / (k * z), rel=1e-14)
        assert x0 == pytest.approx(L - a / k, rel=1e-14)
        slope_form = -((k * L - a) ** 3) / (2 * k * z)
        constant_form = -(k**3 * L**3 + 9 * k * L * a**2 - 10 * a**3
                         - 24 * a**3 * (math.log(2 * a) - math.log(z))) / (6 * k**2)
        assert c4 == pytest.approx(slope_form, rel=1e-12)
        assert c3 == pytest.approx(constant_form, rel=1e-9)

    def test_c1_matching_and_clamp(self, beam):
        rng = np.random.default_rng(7)
        for _ in range(20):
            abar = rng.uniform(1e-3, 3e-2)
            r = rng.uniform(0.34, 0.98)
            case = case_b(beam, abar, r)
            a = beam.axial_state(case.N).alpha
            k, L = case.H / beam.EJ, beam.L
            c1, c2, c3, c4, x0 = case_b_constants(case, beam)
            q = 4 * a**3 / k**2
            y1 = lambda x: c1 + c2 * x + q * math.log(k * (x - L) + 3 * a)  # noqa: E731
            d1 = lambda x: c2 + q * k / (k * (x - L) + 3 * a)  # noqa: E731
            y2 = lambda x: c3 + c4 * x - k * L * x**2 / 2 + k * x**3 / 6  # noqa: E731
            d2 = lambda x: c4 - k * L * x + k * x**2 / 2  # noqa: E731
            fa = abs(case_b_tip_deflection(case, beam))
            assert abs(y1(x0) - y2(x0)) < 1e-10 * fa
            assert abs(d1(x0) - d2(x0)) < 1e-10 * fa
            assert abs(y1(0.0)) < 1e-12 * L
            assert abs(d1(0.0)) < 1e-12 * L

    def test_field_tip_equals_tip_formula(self, beam):
        for r in (0.2, 0.4, 0.7, 0.95):
            case = case_b(beam, 9e-3, r)
            fld = case_b_deflection(case, beam, n=500)
            assert fld.tip == pytest.approx(case_b_tip_deflection(case, beam), rel=1e-10)

    def test_quadrature_oracle(self, beam):
        rng = np.random.default_rng(11)
        for _ in range(6):
            case = case_b(beam, rng.uniform(2e-3, 2e-2), rng.uniform(0.35, 0.95))
            fld = case_b_deflection(case, beam, n=10_000)
            fa = abs(fld.tip)
            for i in range(0, 10_001, 1000):
                ref = quadrature_deflection(case, beam, fld.x[i])
                assert abs(fld.y[i] - ref) < 1e-6 * fa

    def test_limit_towards_h_min(self, beam):
        for eps in (1e-3, 1e-5):
            case = case_b(beam, 9e-3, (1 + eps) / 3)
            *_, x0 = case_b_constants(case, beam)
            assert x0 < 1.01 * eps * beam.L
            k = case.H / beam.EJ
            fld = case_b_deflection(case, beam, n=200)
            cubic = -k * (beam.L * fld.x**2 / 2 - fld.x**3 / 6)
            assert np.max(np.abs(fld.y - cubic)) < 10 * eps * abs(cubic[-1])

    def test_monotone_growth_to_capacity(self, beam):
        prev = 0.0
        for r in (0.5, 0.9, 0.99, 0.999, 0.99999):
            fa = abs(case_b_tip_deflection(case_b(beam, 9e-3, r), beam))
            assert fa > prev
            prev = fa
        assert prev > 100 * abs(case_b_tip_deflection(case_b(beam, 9e-3, 0.5), beam))

    def test_capacity_and_guard_band(self, beam):
        with pytest.raises(SectionCapacityExceeded):
            case_b_tip_deflection(case_b(beam, 9e-3, 1.0), beam)
        with pytest.raises(DomainNearCapacity):
            case_b_tip_deflection(case_b(beam, 9e-3, 1 - 1e-11), beam)


class TestPushover:
    def test_anchor_points(self, beam):
        rows = pushover_curve_first_order(beam, alphabars=(5e-3, 9e-3), samples=4, top=1.0 / 3 * 3 * 0.99)
        for abar in (5e-3, 9e-3):
            assert [r for r in rows if r["alphabar"] == abar][0]["fa_over_L"] == 0.0

        case = case_b(beam, 9e-3, 1 / 3)
        assert abs(case_b_tip_deflection(case, beam)) / beam.L == pytest.approx(9e-3 / 3, rel=1e-12)

    def test_curve_monotone(self, beam):
        rows = pushover_curve_first_order(beam, alphabars=(9e-3,), samples=60, top=0.999, refine=True)
        f = [r["fa_over_L"] for r in rows]
        h = [r["H_over_Hmax"] for r in rows]
        assert all(b > a for a, b in zip(f, f[1:]))
        assert all(b > a for a, b in zip(h, h[1:]))
        assert h[-1] == pytest.approx(0.999)

    def test_sample_fractions(self):
        u = sample_fractions(5, 0.8)
        np.testing.assert_allclose(u, [0, 0.2, 0.4, 0.6, 0.8])
        r = sample_fractions(10, 0.99, refine=True)
        assert r[0] == 0 and r[-1] == pytest.approx(0.99) and np.all(np.diff(r) > 0)
