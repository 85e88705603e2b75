"""Fundamental frequency of the simply supported beam of span ``2L``.

The beam is the mirror image of the cantilever about the clamped section,
so the static state comes from the cantilever solutions. The frequency is
the one-term (half-sine) estimate

    omega^2 = (4 pi^4 c^2 / (2L)^5) * int_0^L sin^2(pi x / 2L) g(x) dx
              - omega_el^2 |N| / N_E

where ``g = 1`` on uncracked stations and ``(alpha / |chi|)^(3/2)`` on
cracked ones. The first term is called the stiffness term below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson
from scipy.interpolate import CubicSpline
from scipy.optimize import brentq

from .closed_form import LoadCaseA, LoadCaseB, _check_case_b, case_a_curvature
from .constitutive import BeamSpec
from .exceptions import BeyondCollapse, BeyondCriticalLoad, DomainNearCapacity, SectionCapacityExceeded
from .second_order import SolverSettings, map_points, solve_case_a, solve_case_b


@dataclass(frozen=True)
class FrequencyResult:
    omega2: float
    """Squared fundamental frequency, stiffness term plus axial term [1/s^2]."""
    omega_el2: float
    ratio: float
    """``sqrt(omega2 / omega_el2)``; 0 when ``omega2 < 0``."""
    stiffness2: float
    """Stiffness term alone [1/s^2]."""
    stiffness_ratio: float
    valid: bool = True
    """False when ``omega2 < 0`` and the one-term estimate has broken down."""


def _result(beam: BeamSpec, stiffness_rel: float, n_ratio: float) -> FrequencyResult:
    w_el2 = beam.omega_el2
    stiff2 = w_el2 * stiffness_rel
    omega2 = stiff2 - w_el2 * n_ratio
    valid = omega2 >= 0.0
    return FrequencyResult(
        omega2=omega2,
        omega_el2=w_el2,
        ratio=math.sqrt(omega2 / w_el2) if valid else 0.0,
        stiffness2=stiff2,
        stiffness_ratio=math.sqrt(stiffness_rel),
        valid=valid,
    )


def frequency_elastic(N: float, beam: BeamSpec) -> FrequencyResult:
    """Linear-elastic beam: ``omega^2 = omega_el^2 (1 - |N|/N_E)``."""
    n_ratio = abs(N) / beam.N_E
    if n_ratio >= 1.0:
        raise BeyondCriticalLoad(f"|N|/N_E = {n_ratio:.6g} >= 1")
    return _result(beam, 1.0, n_ratio)


def stiffness_integral(g, L: float, splits=(), n: int = 2000) -> float:
    """``(2/L) int_0^L sin^2(pi x / 2L) g(x) dx`` by composite Simpson.

    The interval is cut at every abscissa in ``splits`` so that kinks of
    ``g`` fall on panel ends. Equals 1 for ``g == 1``.
    """
    cuts = sorted({0.0, L, *(float(s) for s in splits if 0.0 < s < L)})
    total = 0.0
    for a, b in zip(cuts[:-1], cuts[1:]):
        m = max(2, int(round(n * (b - a) / L)))
        m += m % 2
        x = np.linspace(a, b, m + 1)
        total += simpson(np.sin(np.pi * x / (2.0 * L)) ** 2 * g(x), x=x)
    return 2.0 * total / L


def _crack_factor(m_abs, s, ej):
    """``g`` as a function of the moment magnitude."""
    a = s.alpha
    cracked = m_abs > s.M_el
    d = np.where(cracked, m_abs / ej - 3.0 * a, 1.0)
    chi = np.where(cracked, 4.0 * a**3 / d**2, a)
    return np.where(cracked, (a / chi) ** 1.5, 1.0)


def _moment_field(report, n_abs, e, H, L):
    """Smooth ``x -> M(x)`` from a converged report (cubic spline through ``y``)."""
    spline = CubicSpline(report.field.x, report.field.y)
    y_tip = report.field.y[-1]

    def moment(x):
        return H * (L - x) + n_abs * (e + np.abs(y_tip - spline(x)))

    return moment


def _elastic_limit_crossing(moment, m_el, x_grid):
    g = moment(x_grid) - m_el
    if g[0] <= 0.0:
        return None
    below = np.flatnonzero(g <= 0.0)
    if below.size == 0:
        return None
    i = below[0]
    return brentq(lambda t: float(moment(np.array([t]))[0]) - m_el, x_grid[i - 1], x_grid[i], xtol=1e-14 * x_grid[-1])


def frequency_case_a(case: LoadCaseA, beam: BeamSpec, settings: SolverSettings | None = None,
                     include_geometric: bool = True, n_quad: int | None = None) -> FrequencyResult:
    """Frequency under the eccentric axial load.

    With ``include_geometric=False`` the curvature is the constant
    first-order value, so the stiffness term depends on ``e/h`` only.
    """
    settings = settings or SolverSettings()
    n_quad = n_quad or settings.n
    s = beam.axial_state(case.N)
    n_ratio = -case.N / beam.N_E
    if n_ratio >= 1.0:
        raise BeyondCriticalLoad(f"|N|/N_E = {n_ratio:.6g} >= 1")
    L = beam.L
    if not include_geometric:
        chi = case_a_curvature(case, beam)
        g0 = 1.0 if chi <= s.alpha else (s.alpha / chi) ** 1.5
        rel = stiffness_integral(lambda x: np.full_like(x, g0), L, n=n_quad)
        return _result(beam, rel, n_ratio)
    rep = solve_case_a(case, beam, settings)
    if not rep.converged:
        raise BeyondCollapse(f"static solve ended with status {rep.status.value}", rep.status.value)
    moment = _moment_field(rep, -case.N, case.e, 0.0, L)
    xc = _elastic_limit_crossing(moment, s.M_el, rep.field.x)
    rel = stiffness_integral(lambda x: _crack_factor(moment(x), s, beam.EJ), L,
                             splits=() if xc is None else (xc,), n=n_quad)
    return _result(beam, rel, n_ratio)


def frequency_case_b(case: LoadCaseB, beam: BeamSpec, settings: SolverSettings | None = None,
                     include_geometric: bool = True, n_quad: int | None = None) -> FrequencyResult:
    """Frequency under axial plus horizontal load (``2H`` at mid-span of the ``2L`` beam)."""
    settings = settings or SolverSettings()
    n_quad = n_quad or settings.n
    s = beam.axial_state(case.N)
    n_ratio = -case.N / beam.N_E
    if n_ratio >= 1.0:
        raise BeyondCriticalLoad(f"|N|/N_E = {n_ratio:.6g} >= 1")
    L = beam.L
    if not include_geometric:
        _check_case_b(case, beam)
        if case.H <= case.H_min(beam):
            return _result(beam, stiffness_integral(np.ones_like, L, n=n_quad), n_ratio)
        x0 = L - s.alpha / case.k(beam)

        def moment(x):
            return case.H * (L - x)
    else:
        rep = solve_case_b(case, beam, settings)
        if not rep.converged:
            raise BeyondCollapse(f"static solve ended with status {rep.status.value}", rep.status.value)
        moment = _moment_field(rep, -case.N, 0.0, case.H, L)
        x0 = _elastic_limit_crossing(moment, s.M_el, rep.field.x)
    rel = stiffness_integral(lambda x: _crack_factor(moment(x), s, beam.EJ), L,
                             splits=() if not x0 else (x0,), n=n_quad)
    return _result(beam, rel, n_ratio)


def _sweep_row(func, abscissa_name, value):
    try:
        r = func(value)
    except (SectionCapacityExceeded, DomainNearCapacity):
        status = "capacity_exceeded"
    except BeyondCollapse as exc:
        status = exc.status
    else:
        return {
            abscissa_name: value,
            "ratio": r.ratio,
            "stiffness_ratio": r.stiffness_ratio,
            "status": "converged" if r.valid else "negative_omega2",
        }
    # no equilibrium state: zero frequency at and beyond collapse
    return {abscissa_name: value, "ratio": 0.0, "stiffness_ratio": 0.0, "status": status}


def frequency_curve_a(beam: BeamSpec, n_over_ne: float, e_over_h, settings: SolverSettings | None = None,
                      include_geometric: bool = True, workers: int = 1) -> list[dict]:
    """``omega/omega_el`` against ``e/h`` at fixed ``|N|/N_E``."""
    N = beam.force_from_euler_ratio(n_over_ne)

    def func(eh):
        return frequency_case_a(LoadCaseA(N, eh * beam.h), beam, settings, include_geometric)

    rows = map_points(lambda eh: _sweep_row(func, "e_over_h", float(eh)), e_over_h, workers)
    for r in rows:
        r["N_over_NE"] = n_over_ne
    return rows


def frequency_curve_b(beam: BeamSpec, n_over_ne: float, h_over_hmax, settings: SolverSettings | None = None,
                      include_geometric: bool = True, workers: int = 1) -> list[dict]:
    """``omega/omega_el`` against ``H/H_max`` at fixed ``|N|/N_E``."""
    N = beam.force_from_euler_ratio(n_over_ne)
    H_max = -N * beam.h / (2.0 * beam.L)

    def func(r):
        return frequency_case_b(LoadCaseB(N, r * H_max), beam, settings, include_geometric)

    rows = map_points(lambda r: _sweep_row(func, "H_over_Hmax", float(r)), h_over_hmax, workers)
    for r in rows:
        r["N_over_NE"] = n_over_ne
    return rows
