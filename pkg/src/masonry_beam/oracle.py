"""Independent reference solutions used to check the production solvers.

``relax_case`` solves the discretised equilibrium by damped successive
substitution on a fine grid. It shares no code with the production path:
the section law is inverted in its own closed form, curvature is integrated
by central finite differences with a ghost node at the clamp, and the
convergence test is the station-wise moment imbalance rather than the
change in deflection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .closed_form import LoadCaseA, LoadCaseB
from .constitutive import BeamSpec
from .exceptions import BeyondCriticalLoad


@dataclass
class OracleResult:
    x: np.ndarray
    y: np.ndarray
    converged: bool
    residual_norm: float
    """Largest ``|M_internal - M_external|`` over the stations, divided by ``M_max``."""
    iterations: int

    @property
    def f_a(self) -> float:
        return float(self.y[-1])


def secant_tip_deflection(N: float, e: float, beam: BeamSpec) -> float:
    """Tip deflection magnitude of the elastic cantilever under eccentric ``N``."""
    lam_L = math.sqrt(abs(N) / beam.EJ) * beam.L
    if lam_L >= math.pi / 2:
        raise BeyondCriticalLoad(f"lambda L = {lam_L:.6g} >= pi/2")
    return e * (1.0 / math.cos(lam_L) - 1.0)


def _section(beam: BeamSpec, N: float):
    n_abs = -N
    EJ = beam.E * beam.b * beam.h**3 / 12.0
    m_el = n_abs * beam.h / 6.0
    m_max = n_abs * beam.h / 2.0
    return n_abs, EJ, m_el, m_max


def _chi_of_m(m, EJ, m_el, elastic):
    if elastic:
        return m / EJ
    # uncracked: chi = M/EJ; cracked: M = M_el (3 - 2 sqrt(alpha/chi))
    t = np.where(m > m_el, (3.0 - m / m_el) / 2.0, 1.0)
    alpha = m_el / EJ
    return np.where(m > m_el, alpha / t**2, m / EJ)


def _m_of_chi(chi, EJ, m_el, elastic):
    if elastic:
        return EJ * chi
    alpha = m_el / EJ
    big = np.abs(chi) > alpha
    safe = np.where(big, np.abs(chi), alpha)
    return np.where(big, np.sign(chi) * m_el * (3.0 - 2.0 * np.sqrt(alpha / safe)), EJ * chi)


def _increments(chi, dx):
    """First differences ``d_i = y_{i+1} - y_i`` of the finite-difference solution.

    Central differences ``y_{i+1} - 2 y_i + y_{i-1} = -dx^2 chi_i`` with
    ``y_0 = 0`` and the ghost node ``y_{-1} = y_1`` for ``y'(0) = 0``.
    """
    d = np.empty(chi.size - 1)
    d[0] = -0.5 * dx * dx * chi[0]
    d[1:] = d[0] - dx * dx * np.cumsum(chi[1:-1])
    return d


def _deflection(d):
    return np.concatenate(([0.0], np.cumsum(d)))


def _fd_curvature(d, dx):
    """Curvature at stations ``0 .. n-1`` from the increments."""
    chi = np.empty(d.size)
    chi[0] = -2.0 * d[0] / dx**2
    chi[1:] = -(d[1:] - d[:-1]) / dx**2
    return chi


def relax_case(case: LoadCaseA | LoadCaseB, beam: BeamSpec, fine_n: int = 20000, tol: float = 1e-10,
               damping: float = 0.5, max_iter: int = 20000, elastic: bool = False) -> OracleResult:
    """Damped substitution ``y <- (1 - damping) y + damping F(y)`` on a fine grid.

    The iterate is stored as first differences of ``y`` so the curvature
    recovered for the equilibrium check does not lose digits.
    """
    n_abs, EJ, m_el, m_max = _section(beam, case.N)
    L = beam.L
    e = case.e if isinstance(case, LoadCaseA) else 0.0
    H = case.H if isinstance(case, LoadCaseB) else 0.0
    x = np.linspace(0.0, L, fine_n + 1)
    dx = L / fine_n
    d = np.zeros(fine_n)

    def external(y):
        return H * (L - x) + n_abs * (e + np.abs(y[-1] - y))

    res = math.inf
    for it in range(1, max_iter + 1):
        m = external(_deflection(d))
        if not elastic and m.max() >= m_max:
            return OracleResult(x, _deflection(d), False, math.inf, it)
        d = (1.0 - damping) * d + damping * _increments(_chi_of_m(m, EJ, m_el, elastic), dx)
        y = _deflection(d)
        # the tip station has no central difference; equilibrium is checked on 0 .. n-1
        m_int = _m_of_chi(_fd_curvature(d, dx), EJ, m_el, elastic)
        res = float(np.max(np.abs(m_int - external(y)[:-1]))) / m_max
        if res < tol:
            return OracleResult(x, y, True, res, it)
    return OracleResult(x, _deflection(d), False, res, max_iter)


def critical_axial_load(e: float, beam: BeamSpec, rel_tol: float = 2e-3, **relax_kwargs) -> float:
    """``|N|/N_E`` at the limit of existence of oracle equilibria, by bisection."""
    lo, hi = 0.0, 1.0
    while hi - lo > rel_tol * max(lo, 1e-3):
        mid = 0.5 * (lo + hi)
        res = relax_case(LoadCaseA(beam.force_from_euler_ratio(mid), e), beam, **relax_kwargs)
        if res.converged:
            lo = mid
        else:
            hi = mid
    return lo
