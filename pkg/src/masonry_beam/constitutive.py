"""Moment-curvature law of a rectangular section with zero tensile strength.

The section carries compression only, with unlimited compressive strength.
Below the elastic-limit curvature ``alpha`` the whole section is compressed
and the response is linear; above it the section cracks and the moment
saturates towards ``M_max = -N h / 2``.

Sign convention: the axial force ``N`` is negative (compression).
All functions accept scalars or numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import SectionCapacityExceeded


@dataclass(frozen=True)
class BeamSpec:
    """Rectangular-section cantilever of length ``L``.

    The same data describe half of a simply supported beam of length ``2L``.
    """

    b: float
    h: float
    L: float
    E: float
    rho: float = 1800.0

    J: float = field(init=False, repr=False)
    EJ: float = field(init=False, repr=False)
    gamma: float = field(init=False, repr=False)
    N_E: float = field(init=False, repr=False)
    c2: float = field(init=False, repr=False)

    def __post_init__(self):
        for name in ("b", "h", "L", "E", "rho"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be finite and > 0, got {value!r}")
        J = self.b * self.h**3 / 12.0
        EJ = self.E * J
        object.__setattr__(self, "J", J)
        object.__setattr__(self, "EJ", EJ)
        object.__setattr__(self, "gamma", 3.0 * EJ / (self.L * self.h))
        object.__setattr__(self, "N_E", math.pi**2 * EJ / (2.0 * self.L) ** 2)
        object.__setattr__(self, "c2", EJ / (self.rho * self.b * self.h))

    @property
    def omega_el2(self) -> float:
        """Squared fundamental frequency of the unloaded elastic beam of span 2L."""
        return self.c2 * math.pi**4 / (2.0 * self.L) ** 4

    def axial_state(self, N: float) -> AxialState:
        return AxialState.from_force(N, self)

    # dimensionless <-> dimensional load conversions

    def force_from_euler_ratio(self, ratio: float) -> float:
        """Axial force ``N`` (negative) such that ``|N| / N_E == ratio``."""
        return -ratio * self.N_E

    def force_from_alphabar(self, alphabar: float) -> float:
        """Axial force ``N`` (negative) such that ``alpha * L == alphabar``."""
        return -alphabar * self.E * self.b * self.h**2 / (2.0 * self.L)

    def force_from_gamma_ratio(self, ratio: float) -> float:
        return -ratio * self.gamma


@dataclass(frozen=True)
class AxialState:
    """Section quantities fixed by the axial force ``N < 0``."""

    N: float
    alpha: float
    M_el: float
    M_max: float

    @classmethod
    def from_force(cls, N: float, beam: BeamSpec) -> AxialState:
        N = float(N)
        if not (math.isfinite(N) and N < 0):
            raise ValueError(f"axial force must be negative (compression), got {N!r}")
        alpha = -2.0 * N / (beam.E * beam.b * beam.h**2)
        # M_el == alpha*EJ and M_max == 3*M_el hold exactly in exact arithmetic;
        # derive both from alpha so they also agree in floating point.
        M_el = alpha * beam.EJ
        return cls(N=N, alpha=alpha, M_el=M_el, M_max=3.0 * M_el)


def moment_of_curvature(chi, s: AxialState, beam: BeamSpec):
    """Bending moment carried by the section at curvature ``chi``."""
    chi = np.asarray(chi, dtype=float)
    a = s.alpha
    mag = np.abs(chi)
    cracked = mag > a
    # guard the sqrt argument on the elastic branch (chi may be 0)
    ratio = np.sqrt(a / np.where(cracked, mag, a))
    out = np.where(cracked, beam.EJ * a * np.sign(chi) * (3.0 - 2.0 * ratio), beam.EJ * chi)
    return out[()] if out.ndim == 0 else out


def curvature_of_moment(M, s: AxialState, beam: BeamSpec):
    """Inverse of :func:`moment_of_curvature`.

    Raises :class:`SectionCapacityExceeded` if ``|M| >= M_max`` anywhere.
    """
    M = np.asarray(M, dtype=float)
    mag = np.abs(M)
    if np.any(mag >= s.M_max):
        raise SectionCapacityExceeded(
            f"|M| = {float(np.max(mag)):.6g} reaches section capacity M_max = {s.M_max:.6g}"
        )
    a = s.alpha
    m = mag / beam.EJ
    cracked = mag > s.M_el
    chi_mag = np.where(cracked, 4.0 * a**3 / (m - 3.0 * a) ** 2, m)
    out = np.sign(M) * chi_mag
    return out[()] if out.ndim == 0 else out


def tangent_stiffness(chi, s: AxialState, beam: BeamSpec):
    """Derivative ``dM/dchi``: ``EJ`` when uncracked, ``EJ (alpha/|chi|)^1.5`` otherwise."""
    chi = np.asarray(chi, dtype=float)
    a = s.alpha
    mag = np.abs(chi)
    cracked = mag > a
    out = np.where(cracked, beam.EJ * (a / np.where(cracked, mag, a)) ** 1.5, beam.EJ)
    return out[()] if out.ndim == 0 else out
