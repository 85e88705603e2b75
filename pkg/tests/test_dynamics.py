import math

import numpy as np
import pytest
from scipy.integrate import quad

from masonry_beam import (
    BeyondCriticalLoad,
    LoadCaseA,
    LoadCaseB,
    frequency_case_a,
    frequency_case_b,
    frequency_elastic,
)
from masonry_beam.dynamics import frequency_curve_a, frequency_curve_b, stiffness_integral


def H_of(beam, N, r):
    return r * -N * beam.h / (2 * beam.L)


class TestStiffnessIntegral:
    def test_unit_weight(self):
        assert stiffness_integral(np.ones_like, 3.0) == pytest.approx(1.0, rel=1e-12)

    def test_kink_on_split(self):
        L, c = 2.0, 0.7
        g = lambda x: np.where(x < c, 0.25 + 0.75 * (x / c) ** 2, 1.0)  # noqa: E731
        ref, _ = quad(lambda x: math.sin(math.pi * x / (2 * L)) ** 2 * float(g(np.array(x))), 0, L,
                      points=[c], epsabs=0, epsrel=1e-13)
        assert stiffness_integral(g, L, splits=(c,)) == pytest.approx(2 * ref / L, rel=1e-12)


class TestElastic:
    @pytest.mark.parametrize("nr", [0.0, 0.1, 0.5, 0.9])
    def test_ratio(self, beam, nr):
        r = frequency_elastic(-nr * beam.N_E, beam)
        assert r.ratio == pytest.approx(math.sqrt(1 - nr), rel=1e-12)

    def test_omega_el(self, beam):
        c2 = beam.E * beam.b * beam.h**3 / 12 / (beam.rho * beam.b * beam.h)
        assert beam.omega_el2 == pytest.approx(math.pi**4 * c2 / (2 * beam.L) ** 4, rel=1e-14)

    def test_beyond_euler(self, beam):
        with pytest.raises(BeyondCriticalLoad):
            frequency_elastic(-beam.N_E, beam)


class TestFirstOrder:
    def test_uncracked_is_elastic(self, beam):
        N = beam.force_from_euler_ratio(0.2)
        r = frequency_case_a(LoadCaseA(N, 0.1 * beam.h), beam, include_geometric=False)
        assert r.ratio == pytest.approx(math.sqrt(0.8), rel=1e-12)

    def test_one_third(self, beam):
        r = frequency_case_a(LoadCaseA(beam.force_from_euler_ratio(0.1), beam.h / 3), beam,
                             include_geometric=False)
        assert r.stiffness_ratio == pytest.approx(0.5**1.5, rel=1e-10)

    @pytest.mark.parametrize("eh", [0.2, 1 / 3, 0.45])
    def test_stiffness_independent_of_load(self, beam, eh):
        s = [frequency_case_a(LoadCaseA(beam.force_from_euler_ratio(nr), eh * beam.h), beam,
                              include_geometric=False).stiffness_ratio for nr in (0.1, 0.3)]
        assert s[0] == pytest.approx(s[1], rel=1e-12)

    def test_case_b_below_h_min(self, beam):
        N = beam.force_from_euler_ratio(0.3)
        r = frequency_case_b(LoadCaseB(N, H_of(beam, N, 0.3)), beam, include_geometric=False)
        assert r.stiffness_ratio == pytest.approx(1.0, rel=1e-12)

    def test_case_b_quadrature_converged(self, beam):
        N = beam.force_from_euler_ratio(0.2)
        case = LoadCaseB(N, H_of(beam, N, 0.8))
        a = frequency_case_b(case, beam, include_geometric=False, n_quad=4000)
        b = frequency_case_b(case, beam, include_geometric=False, n_quad=8000)
        assert abs(a.stiffness_ratio - b.stiffness_ratio) < 1e-8

    def test_case_b_decreasing(self, beam):
        N = beam.force_from_euler_ratio(0.2)
        s = [frequency_case_b(LoadCaseB(N, H_of(beam, N, r)), beam, include_geometric=False).stiffness_ratio
             for r in (0.4, 0.6, 0.8, 0.95)]
        assert all(b < a for a, b in zip(s, s[1:]))


class TestGeometric:
    def test_vanishing_load_matches_first_order(self, beam, tight):
        N = beam.force_from_euler_ratio(1e-8)
        case = LoadCaseA(N, 0.3 * beam.h)
        on = frequency_case_a(case, beam, tight, include_geometric=True)
        off = frequency_case_a(case, beam, include_geometric=False)
        assert on.stiffness_ratio == pytest.approx(off.stiffness_ratio, rel=1e-6)

    def test_vanishing_load_case_b(self, beam, tight):
        N = beam.force_from_euler_ratio(1e-8)
        case = LoadCaseB(N, H_of(beam, N, 0.7))
        on = frequency_case_b(case, beam, tight, include_geometric=True)
        off = frequency_case_b(case, beam, include_geometric=False)
        assert on.stiffness_ratio == pytest.approx(off.stiffness_ratio, rel=1e-6)

    def test_zero_horizontal_load_is_elastic(self, beam, settings):
        N = beam.force_from_euler_ratio(0.3)
        r = frequency_case_b(LoadCaseB(N, 0.0), beam, settings)
        assert r.ratio == pytest.approx(math.sqrt(0.7), rel=1e-12)

    def test_geometric_lowers_frequency(self, beam, settings):
        N = beam.force_from_euler_ratio(0.1)
        for eh in (0.15, 0.2):
            case = LoadCaseA(N, eh * beam.h)
            assert (frequency_case_a(case, beam, settings).ratio
                    < frequency_case_a(case, beam, include_geometric=False).ratio)

    def test_curve_a_reaches_zero(self, beam, settings):
        rows = frequency_curve_a(beam, 0.3, np.linspace(0.0, 0.3, 16), settings)
        ratios = [r["ratio"] for r in rows]
        assert ratios[0] == pytest.approx(math.sqrt(0.7))
        assert all(b <= a for a, b in zip(ratios, ratios[1:]))
        assert rows[-1]["ratio"] == 0.0 and rows[-1]["status"] != "converged"

    def test_curve_b_departs_before_h_min(self, beam, settings):
        rows = frequency_curve_b(beam, 0.4, [0.0, 0.25], settings)
        assert rows[1]["stiffness_ratio"] < 1.0
        assert rows[0]["stiffness_ratio"] == 1.0

    def test_curve_b_first_order_flat_below_h_min(self, beam):
        rows = frequency_curve_b(beam, 0.4, [0.0, 0.25, 0.33], include_geometric=False)
        assert all(r["stiffness_ratio"] == pytest.approx(1.0) for r in rows)
