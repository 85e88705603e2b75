"""Hot loops of the fixed-point deflection solver.

Every kernel exists twice: a numba ``@njit`` version and a plain numpy
version with identical semantics. The numba path is used when numba imports
and the environment variable ``MASONRY_BEAM_KERNELS`` is not ``numpy``.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False

BACKEND = "numba" if _HAVE_NUMBA and os.environ.get("MASONRY_BEAM_KERNELS", "numba") != "numpy" else "numpy"

#: bisection tolerance for the cracked/elastic boundary, relative to L
X0_TOL = 1e-12


# --------------------------------------------------------------------------
# numpy implementations
# --------------------------------------------------------------------------

def _moment_np(x, y, n_abs, e, h_force, L):
    return h_force * (L - x) + n_abs * (e + np.abs(y[-1] - y))


def _locate_x0_np(x, y, n_abs, e, h_force, L, m_el):
    g = _moment_np(x, y, n_abs, e, h_force, L) - m_el
    if g[0] <= 0.0:
        return 0.0
    below = np.flatnonzero(g <= 0.0)
    if below.size == 0:
        return L
    i = below[0]
    return _bisect_cell(x[i - 1], x[i], y[i - 1], y[i], y[-1], n_abs, e, h_force, L, m_el)


def _bisect_cell(xa, xb, ya, yb, y_tip, n_abs, e, h_force, L, m_el):
    lo, hi = xa, xb
    width = xb - xa
    tol = X0_TOL * L
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        ym = ya + (yb - ya) * (mid - xa) / width
        gm = h_force * (L - mid) + n_abs * (e + abs(y_tip - ym)) - m_el
        if gm > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _double_integrate_np(chi, dx):
    slope = np.zeros_like(chi)
    slope[1:] = np.cumsum(0.5 * dx * (chi[1:] + chi[:-1]))
    y = np.zeros_like(chi)
    y[1:] = -np.cumsum(0.5 * dx * (slope[1:] + slope[:-1]))
    return y


def _picard_step_np(x, y, n_abs, e, h_force, L, ej, alpha, m_el, m_max, elastic, split):
    m = _moment_np(x, y, n_abs, e, h_force, L)
    if not elastic and m.max() >= m_max:
        return y, m, 0.0, False
    if elastic:
        chi = m / ej
        x0 = 0.0
    else:
        if split:
            x0 = _locate_x0_np(x, y, n_abs, e, h_force, L, m_el)
            cracked = x < x0
        else:
            x0 = 0.0
            cracked = m > m_el
        denom = np.where(cracked, m / ej - 3.0 * alpha, 1.0)
        chi = np.where(cracked, 4.0 * alpha**3 / denom**2, m / ej)
    return _double_integrate_np(chi, x[1] - x[0]), chi, x0, True


def _relative_change_np(y_new, y_old, floor):
    mask = np.abs(y_old) >= floor
    if not mask.any():
        return 0.0 if np.all(np.abs(y_new) < floor) else np.inf
    return float(np.max(np.abs(y_new[mask] - y_old[mask]) / np.abs(y_old[mask])))


# --------------------------------------------------------------------------
# numba implementations
# --------------------------------------------------------------------------

if _HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _bisect_cell_nb(xa, xb, ya, yb, y_tip, n_abs, e, h_force, L, m_el):
        lo, hi = xa, xb
        width = xb - xa
        tol = X0_TOL * L
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            ym = ya + (yb - ya) * (mid - xa) / width
            gm = h_force * (L - mid) + n_abs * (e + abs(y_tip - ym)) - m_el
            if gm > 0.0:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    @njit(cache=True, nogil=True)
    def _picard_step_nb(x, y, n_abs, e, h_force, L, ej, alpha, m_el, m_max, elastic, split):
        n = x.size
        y_tip = y[n - 1]
        m = np.empty(n)
        m_top = -np.inf
        for i in range(n):
            m[i] = h_force * (L - x[i]) + n_abs * (e + abs(y_tip - y[i]))
            if m[i] > m_top:
                m_top = m[i]
        if not elastic and m_top >= m_max:
            return y, m, 0.0, False
        x0 = 0.0
        if not elastic and split and m[0] > m_el:
            x0 = L
            for i in range(1, n):
                if m[i] <= m_el:
                    x0 = _bisect_cell_nb(x[i - 1], x[i], y[i - 1], y[i], y_tip, n_abs, e, h_force, L, m_el)
                    break
        chi = np.empty(n)
        a3 = 4.0 * alpha * alpha * alpha
        for i in range(n):
            if elastic:
                cracked = False
            elif split:
                cracked = x[i] < x0
            else:
                cracked = m[i] > m_el
            if cracked:
                d = m[i] / ej - 3.0 * alpha
                chi[i] = a3 / (d * d)
            else:
                chi[i] = m[i] / ej
        dx = x[1] - x[0]
        y_new = np.empty(n)
        y_new[0] = 0.0
        slope_prev = 0.0
        for i in range(1, n):
            slope = slope_prev + 0.5 * dx * (chi[i - 1] + chi[i])
            y_new[i] = y_new[i - 1] - 0.5 * dx * (slope_prev + slope)
            slope_prev = slope
        return y_new, chi, x0, True

    @njit(cache=True, nogil=True)
    def _relative_change_nb(y_new, y_old, floor):
        worst = 0.0
        seen = False
        for i in range(y_old.size):
            d = abs(y_old[i])
            if d >= floor:
                seen = True
                r = abs(y_new[i] - y_old[i]) / d
                if r > worst:
                    worst = r
        if seen:
            return worst
        for i in range(y_new.size):
            if abs(y_new[i]) >= floor:
                return np.inf
        return 0.0


def _resolve(backend):
    name = backend or BACKEND
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown kernel backend {name!r}; expected 'numba' or 'numpy'")
    if name == "numba" and not _HAVE_NUMBA:
        raise ValueError("numba backend requested but numba is not installed")
    return name


def picard_step(x, y, n_abs, e, h_force, L, ej, alpha, m_el, m_max, elastic=False, split=False, backend=None):
    """One sweep of the deflection iteration.

    Returns ``(y_new, chi, x0, ok)``. When ``ok`` is False the external
    moment reached ``m_max`` somewhere; ``y_new`` is then the input ``y``
    and ``chi`` holds the moment field.
    """
    if _resolve(backend) == "numba":
        return _picard_step_nb(x, y, float(n_abs), float(e), float(h_force), float(L), float(ej),
                               float(alpha), float(m_el), float(m_max), bool(elastic), bool(split))
    return _picard_step_np(x, y, n_abs, e, h_force, L, ej, alpha, m_el, m_max, elastic, split)


def relative_change(y_new, y_old, floor, backend=None):
    """Largest pointwise ``|y_new - y_old| / |y_old|`` over stations with ``|y_old| >= floor``."""
    if _resolve(backend) == "numba":
        return float(_relative_change_nb(y_new, y_old, float(floor)))
    return _relative_change_np(y_new, y_old, floor)
