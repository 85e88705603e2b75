"""First-order explicit solutions for the masonry-like cantilever.

Case (a): axial force ``N`` with eccentricity ``e`` at the free end; the
curvature is constant along the axis.

Case (b): axial force ``N`` plus horizontal tip force ``H``; the beam is
cracked on ``[0, x0)`` (log branch) and elastic on ``[x0, L]`` (cubic branch).

Deflections follow ``y'' = -chi`` with ``y(0) = y'(0) = 0`` and are negative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constitutive import AxialState, BeamSpec, curvature_of_moment
from .exceptions import DomainNearCapacity, SectionCapacityExceeded

#: relative guard band on zeta_bar / alpha_bar below which case (b) is refused
CAPACITY_GUARD = 1e-9


@dataclass(frozen=True)
class LoadCaseA:
    N: float
    e: float

    def __post_init__(self):
        if not (math.isfinite(self.N) and self.N < 0):
            raise ValueError(f"N must be negative, got {self.N!r}")
        if not (math.isfinite(self.e) and self.e >= 0):
            raise ValueError(f"eccentricity must be >= 0, got {self.e!r}")


@dataclass(frozen=True)
class LoadCaseB:
    N: float
    H: float

    def __post_init__(self):
        if not (math.isfinite(self.N) and self.N < 0):
            raise ValueError(f"N must be negative, got {self.N!r}")
        if not (math.isfinite(self.H) and self.H >= 0):
            raise ValueError(f"H must be >= 0, got {self.H!r}")

    def H_max(self, beam: BeamSpec) -> float:
        return -self.N * beam.h / (2.0 * beam.L)

    def H_min(self, beam: BeamSpec) -> float:
        return -self.N * beam.h / (6.0 * beam.L)

    def k(self, beam: BeamSpec) -> float:
        return self.H / beam.EJ

    def dimensionless(self, beam: BeamSpec) -> tuple[float, float, float]:
        """``(kbar, alphabar, zetabar)``."""
        alpha = beam.axial_state(self.N).alpha
        L = beam.L
        k = self.k(beam)
        return k * L * L, alpha * L, (3.0 * alpha - k * L) * L


@dataclass
class DeflectionField:
    """Deflection and curvature sampled on a uniform grid over ``[0, L]``."""

    x: np.ndarray
    y: np.ndarray
    chi: np.ndarray

    @property
    def tip(self) -> float:
        return float(self.y[-1])


def _check_case_a(case: LoadCaseA, beam: BeamSpec):
    if case.e >= beam.h / 2.0:
        raise SectionCapacityExceeded(
            f"e = {case.e:.6g} >= h/2 = {beam.h / 2:.6g}: base section at capacity"
        )


def case_a_curvature(case: LoadCaseA, beam: BeamSpec) -> float:
    """Constant curvature magnitude of the first-order case (a) solution."""
    _check_case_a(case, beam)
    s = beam.axial_state(case.N)
    return float(curvature_of_moment(-case.N * case.e, s, beam))


def case_a_tip_deflection(case: LoadCaseA, beam: BeamSpec) -> float:
    """Tip deflection ``f_a = -chi L^2 / 2`` (negative)."""
    return -case_a_curvature(case, beam) * beam.L**2 / 2.0


def case_a_deflection(case: LoadCaseA, beam: BeamSpec, n: int = 2000) -> DeflectionField:
    chi = case_a_curvature(case, beam)
    x = np.linspace(0.0, beam.L, n + 1)
    return DeflectionField(x=x, y=-chi * x**2 / 2.0, chi=np.full_like(x, chi))


def _check_case_b(case: LoadCaseB, beam: BeamSpec):
    H_max = case.H_max(beam)
    if case.H >= H_max:
        raise SectionCapacityExceeded(f"H = {case.H:.6g} >= H_max = {H_max:.6g}")
    kbar, abar, zbar = case.dimensionless(beam)
    if case.H > case.H_min(beam) and zbar < CAPACITY_GUARD * abar:
        raise DomainNearCapacity(
            f"zeta_bar = {zbar:.3g} is inside the guard band below H_max"
        )


def case_b_constants(case: LoadCaseB, beam: BeamSpec) -> tuple[float, float, float, float, float]:
    """Integration constants ``(c1, c2, c3, c4, x0)`` of the cracked solution.

    ``y1 = c1 + c2 x + (4 a^3/k^2) log(k (x - L) + 3 a)`` on ``[0, x0]`` and
    ``y2 = c3 + c4 x - k L x^2/2 + k x^3/6`` on ``(x0, L]``.
    Requires ``H_min < H < H_max``.
    """
    s = beam.axial_state(case.N)
    a = s.alpha
    L = beam.L
    k = case.k(beam)
    zeta = 3.0 * a - k * L
    x0 = L - a / k
    q = 4.0 * a**3 / k**2
    c1 = -q * math.log(zeta)
    c2 = -4.0 * a**3 / (k * zeta)
    # C1 matching at x0, where k (x0 - L) + 3a = 2a
    c4 = -((k * L - a) ** 3) / (2.0 * k * zeta)
    c3 = c1 + c2 * x0 + q * math.log(2.0 * a) - c4 * x0 + k * L * x0**2 / 2.0 - k * x0**3 / 6.0
    return c1, c2, c3, c4, x0


def case_b_deflection(case: LoadCaseB, beam: BeamSpec, n: int = 2000) -> DeflectionField:
    """Deflection field of the first-order case (b) solution."""
    _check_case_b(case, beam)
    L = beam.L
    x = np.linspace(0.0, L, n + 1)
    k = case.k(beam)
    if case.H <= case.H_min(beam):
        y = -k * (L * x**2 / 2.0 - x**3 / 6.0)
        return DeflectionField(x=x, y=y, chi=k * (L - x))
    s = beam.axial_state(case.N)
    a = s.alpha
    c1, c2, c3, c4, x0 = case_b_constants(case, beam)
    cracked = x < x0
    xc = np.where(cracked, x, 0.0)
    y1 = c1 + c2 * xc + 4.0 * a**3 / k**2 * np.log(k * (xc - L) + 3.0 * a)
    y2 = c3 + c4 * x - k * L * x**2 / 2.0 + k * x**3 / 6.0
    y = np.where(cracked, y1, y2)
    m = k * (L - x)
    chi = np.where(cracked, 4.0 * a**3 / (m - 3.0 * a) ** 2, m)
    return DeflectionField(x=x, y=y, chi=chi)


def case_b_tip_deflection(case: LoadCaseB, beam: BeamSpec) -> float:
    """Tip deflection of the first-order case (b) solution (negative).

    Uses the elastic value ``-k L^3 / 3`` for ``H <= H_min``.
    """
    _check_case_b(case, beam)
    L = beam.L
    if case.H <= case.H_min(beam):
        return -case.k(beam) * L**3 / 3.0
    kbar, abar, zbar = case.dimensionless(beam)
    f = -(abar**3 / (3.0 * kbar**2 * zbar)) * (
        17.0 * kbar - 15.0 * abar - 12.0 * zbar * math.log(2.0 * abar / zbar)
    )
    return f * L


def sample_fractions(samples: int, top: float, refine: bool = False) -> np.ndarray:
    """Sweep abscissas in ``[0, top]``.

    Uniform by default. With ``refine`` the upper half of the points are
    spaced geometrically towards 1 so the approach to an asymptote at 1 is
    resolved.
    """
    if samples < 2:
        raise ValueError("need at least 2 samples")
    if not refine:
        return np.linspace(0.0, top, samples)
    n_uni = samples // 2
    uni = np.linspace(0.0, 0.5 * top, n_uni, endpoint=False)
    gap = np.geomspace(1.0 - 0.5 * top, 1.0 - top, samples - n_uni)
    return np.concatenate([uni, 1.0 - gap])


def pushover_curve_first_order(
    beam: BeamSpec,
    N: float | None = None,
    alphabars=(9e-3,),
    samples: int = 41,
    top: float = 0.99,
    refine: bool = False,
) -> list[dict]:
    """Masonry-like push-over curves ``(|f_a|/L, H/H_max)`` for each ``alphabar``.

    The curves depend only on ``alphabar``; the beam's ``E b h^2 / L`` sets
    the axial force. If ``N`` is given it overrides ``alphabars`` with the
    single value it implies.
    """
    if N is not None:
        alphabars = (beam.axial_state(N).alpha * beam.L,)
    rows = []
    for abar in alphabars:
        if not abar > 0:
            raise ValueError(f"alphabar must be > 0, got {abar!r}")
        Nk = beam.force_from_alphabar(abar)
        H_max = -Nk * beam.h / (2.0 * beam.L)
        for r in sample_fractions(samples, top, refine):
            fa = case_b_tip_deflection(LoadCaseB(Nk, r * H_max), beam)
            rows.append({"alphabar": abar, "H_over_Hmax": float(r), "fa_over_L": abs(fa) / beam.L})
    return rows


def case_a_load_curve(beam: BeamSpec, e_over_h: float, gamma_ratios) -> list[dict]:
    """``|f_a|/L`` against ``|N|/gamma`` at fixed eccentricity."""
    rows = []
    for g in gamma_ratios:
        g = float(g)
        if g == 0.0:
            fa = 0.0
        else:
            fa = case_a_tip_deflection(LoadCaseA(beam.force_from_gamma_ratio(g), e_over_h * beam.h), beam)
        rows.append({"e_over_h": e_over_h, "N_over_gamma": g, "fa_over_L": abs(fa) / beam.L})
    return rows
