"""Second-order (P-delta) solutions by fixed-point iteration on the deflection.

Starting from the undeformed axis, each iteration evaluates the bending
moment including the deflection-induced term ``|N| |y(L) - y(x)|``, maps it
to curvature through the masonry-like law and integrates ``y'' = -chi``
twice with the clamped-end conditions. The iteration stops when the
pointwise relative change of ``y`` drops below ``epsilon`` percent.

Failure to converge within ``max_iter`` sweeps, or a moment reaching the
section capacity, is read as "at or beyond collapse" by the bisection
drivers :func:`critical_axial_load` and :func:`collapse_horizontal_load`.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .closed_form import DeflectionField, LoadCaseA, LoadCaseB, case_a_tip_deflection
from .constitutive import BeamSpec
from .exceptions import BeyondCriticalLoad, SectionCapacityExceeded


class Status(str, enum.Enum):
    CONVERGED = "converged"
    NOT_CONVERGED = "not_converged"
    CAPACITY_EXCEEDED = "capacity_exceeded"


@dataclass(frozen=True)
class SolverSettings:
    """Grid and stopping rule. ``epsilon`` is a percentage."""

    n: int = 2000
    epsilon: float = 0.001
    max_iter: int = 30

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 100:
            raise ValueError(f"n must be an integer >= 100, got {self.n!r}")
        if not (math.isfinite(self.epsilon) and self.epsilon > 0):
            raise ValueError(f"epsilon must be > 0, got {self.epsilon!r}")
        if int(self.max_iter) != self.max_iter or self.max_iter < 1:
            raise ValueError(f"max_iter must be an integer >= 1, got {self.max_iter!r}")


@dataclass
class SolverReport:
    status: Status
    iterations: int
    residual: float
    field: DeflectionField
    f_a: float
    e_max: float
    u: float
    x0: float | None = None
    tip_history: list[float] = field(default_factory=list, repr=False)

    @property
    def converged(self) -> bool:
        return self.status is Status.CONVERGED


def _iterate(beam, N, e, H, settings, elastic, split, backend=None):
    s = beam.axial_state(N)
    L = beam.L
    n_abs = -N
    x = np.linspace(0.0, L, settings.n + 1)
    y = np.zeros_like(x)
    chi = np.zeros_like(x)
    x0 = None
    eps = settings.epsilon / 100.0
    floor = 1e-15 * L
    residual = math.inf
    history = []
    status = Status.NOT_CONVERGED
    it = 0
    for it in range(1, settings.max_iter + 1):
        y_new, chi_new, x0_new, ok = _kernels.picard_step(
            x, y, n_abs, e, H, L, beam.EJ, s.alpha, s.M_el, s.M_max,
            elastic=elastic, split=split, backend=backend,
        )
        if not ok:
            status = Status.CAPACITY_EXCEEDED
            break
        residual = _kernels.relative_change(y_new, y, floor, backend=backend)
        y, chi = y_new, chi_new
        x0 = x0_new if split else None
        history.append(float(y[-1]))
        if residual < eps:
            status = Status.CONVERGED
            break
    e_max = H * L / n_abs + e + abs(y[-1])
    return SolverReport(
        status=status,
        iterations=it,
        residual=residual,
        field=DeflectionField(x=x, y=y, chi=chi),
        f_a=float(y[-1]),
        e_max=e_max,
        u=beam.h / 2.0 - e_max,
        x0=x0,
        tip_history=history,
    )


def solve_case_a(case: LoadCaseA, beam: BeamSpec, settings: SolverSettings | None = None,
                 *, elastic: bool = False, backend: str | None = None) -> SolverReport:
    """Second-order solution for the eccentric axial load.

    ``elastic=True`` pins the constitutive law to its linear branch, which
    turns the problem into the classical elastic P-delta cantilever.
    """
    settings = settings or SolverSettings()
    if not elastic and case.e >= beam.h / 2.0:
        raise SectionCapacityExceeded(f"e = {case.e:.6g} >= h/2 = {beam.h / 2:.6g}")
    return _iterate(beam, case.N, case.e, 0.0, settings, elastic, split=False, backend=backend)


def solve_case_b(case: LoadCaseB, beam: BeamSpec, settings: SolverSettings | None = None,
                 *, elastic: bool = False, backend: str | None = None) -> SolverReport:
    """Second-order solution for axial plus horizontal tip load.

    The cracked zone is ``[0, x0)``, with ``x0`` re-located every iteration
    as the root of ``H (L - x) + |N| |y(L) - y(x)| = |N| h / 6``.
    """
    settings = settings or SolverSettings()
    if not elastic and case.H >= case.H_max(beam):
        raise SectionCapacityExceeded(f"H = {case.H:.6g} >= H_max = {case.H_max(beam):.6g}")
    return _iterate(beam, case.N, 0.0, case.H, settings, elastic, split=True, backend=backend)


# --------------------------------------------------------------------------
# collapse searches
# --------------------------------------------------------------------------

@dataclass
class CriticalLoad:
    N_crit: float
    """Critical axial force (negative)."""
    report: SolverReport
    """Solution at the converged end of the final bracket."""
    bracket: tuple[float, float]
    """``(|N| converged, |N| not converged)``."""
    upper_status: Status
    N_over_NE: float
    u_over_h: float


def critical_axial_load(e: float, beam: BeamSpec, settings: SolverSettings | None = None,
                        tol: float = 1e-4, *, elastic: bool = False,
                        backend: str | None = None) -> CriticalLoad:
    """Largest ``|N|`` for which the case (a) iteration converges at eccentricity ``e``.

    Bisection on ``|N|`` over ``(0, N_E]``; ``tol`` is the final bracket
    width relative to ``N_E``.
    """
    settings = settings or SolverSettings()
    if not (0.0 <= e < beam.h / 2.0):
        raise ValueError(f"eccentricity must satisfy 0 <= e < h/2, got {e!r}")
    NE = beam.N_E

    def run(n_abs):
        return solve_case_a(LoadCaseA(-n_abs, e), beam, settings, elastic=elastic, backend=backend)

    lo, hi = 1e-6 * NE, NE
    lo_rep = run(lo)
    if not lo_rep.converged:
        raise BeyondCriticalLoad(f"no converged state even at |N| = {lo:.3g}")
    hi_rep = run(hi)
    if hi_rep.converged:
        # e == 0 keeps the axis straight at any load; N_E bounds the answer
        lo, lo_rep = hi, hi_rep
    else:
        while hi - lo > tol * NE:
            mid = 0.5 * (lo + hi)
            rep = run(mid)
            if rep.converged:
                lo, lo_rep = mid, rep
            else:
                hi, hi_rep = mid, rep
    return CriticalLoad(
        N_crit=-lo,
        report=lo_rep,
        bracket=(lo, hi),
        upper_status=hi_rep.status,
        N_over_NE=lo / NE,
        u_over_h=lo_rep.u / beam.h,
    )


@dataclass
class CollapseLoad:
    H_g: float
    ratio: float
    """``H_g / H_max``."""
    report: SolverReport
    bracket: tuple[float, float]
    upper_status: Status


def collapse_horizontal_load(N: float, beam: BeamSpec, settings: SolverSettings | None = None,
                             tol: float = 1e-4, *, backend: str | None = None) -> CollapseLoad:
    """Largest ``H`` for which the case (b) iteration converges under axial force ``N``.

    Bisection on ``H`` over ``[0, H_max)``; ``tol`` is relative to ``H_max``.
    """
    settings = settings or SolverSettings()
    if not (N < 0 and -N < beam.N_E):
        raise BeyondCriticalLoad(f"need 0 < |N| < N_E, got N = {N!r}")
    H_max = -N * beam.h / (2.0 * beam.L)

    def run(H):
        return solve_case_b(LoadCaseB(N, H), beam, settings, backend=backend)

    lo, hi = 0.0, H_max
    lo_rep = run(lo)
    hi_status = Status.CAPACITY_EXCEEDED
    while hi - lo > tol * H_max:
        mid = 0.5 * (lo + hi)
        rep = run(mid)
        if rep.converged:
            lo, lo_rep = mid, rep
        else:
            hi, hi_status = mid, rep.status
    return CollapseLoad(H_g=lo, ratio=lo / H_max, report=lo_rep, bracket=(lo, hi), upper_status=hi_status)


# --------------------------------------------------------------------------
# sweeps
# --------------------------------------------------------------------------

def map_points(func, items, workers: int = 1) -> list:
    """``[func(i) for i in items]``, optionally on a thread pool; order is preserved."""
    items = list(items)
    if workers <= 1 or len(items) < 2:
        return [func(i) for i in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


def stability_curve(e_over_h: float, beam: BeamSpec, settings: SolverSettings | None = None,
                    samples: int = 21, tol: float = 1e-4, workers: int = 1) -> list[dict]:
    """Equilibrium path ``(u/h, |N|/N_E)`` of case (a) up to the critical load.

    Each row also carries the second- and first-order tip deflections, so
    the rows of a single ``e/h`` double as the load-deflection curve.
    """
    settings = settings or SolverSettings()
    e = e_over_h * beam.h
    crit = critical_axial_load(e, beam, settings, tol)
    fractions = np.linspace(0.0, 1.0, samples)[1:-1]

    def point(t):
        n_abs = t * -crit.N_crit
        rep = solve_case_a(LoadCaseA(-n_abs, e), beam, settings)
        return n_abs, rep

    results = map_points(point, fractions, workers)
    results.append((-crit.N_crit, crit.report))
    rows = [_stability_row(e_over_h, beam, 0.0, None)]
    for n_abs, rep in results:
        fo = abs(case_a_tip_deflection(LoadCaseA(-n_abs, e), beam))
        rows.append(_stability_row(e_over_h, beam, n_abs, rep, fo))
    rows[-1]["critical"] = True
    return rows


def _stability_row(e_over_h, beam, n_abs, rep, fa_first=0.0):
    if rep is None:
        return {
            "e_over_h": e_over_h, "N_over_NE": 0.0, "u_over_h": 0.5 - e_over_h,
            "fa_over_L": 0.0, "fa_over_L_first_order": 0.0, "iterations": 0,
            "status": Status.CONVERGED.value, "critical": False,
        }
    return {
        "e_over_h": e_over_h,
        "N_over_NE": n_abs / beam.N_E,
        "u_over_h": rep.u / beam.h,
        "fa_over_L": abs(rep.f_a) / beam.L,
        "fa_over_L_first_order": fa_first / beam.L,
        "iterations": rep.iterations,
        "status": rep.status.value,
        "critical": False,
    }
