"""Dimensionless velocity-variance growth rates near a perfect mirror.

``rate_longitudinal`` and ``rate_transverse`` return R_z(xi) and R_x(xi),
the slopes of the velocity variance in units of q^4 E0^2 / (16 pi m^4 d).
Both closed forms cancel to O(xi^5) in the numerator, so below
``SERIES_SWITCH`` they are evaluated from frozen Taylor coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import Axis, DimensionlessPoint, as_xi, horner
from .errors import BracketError, DomainError

SERIES_SWITCH = 0.1
# odd-power Taylor coefficients, index k multiplies xi**(2k+1)
_RZ_SERIES = (
    Fraction(-4, 15), Fraction(8, 35), Fraction(-8, 189), Fraction(16, 4455),
    Fraction(-8, 45045), Fraction(16, 2764125), Fraction(-16, 119282625),
)
_RX_SERIES = (
    Fraction(8, 15), Fraction(-24, 35), Fraction(32, 189), Fraction(-16, 891),
    Fraction(16, 15015), Fraction(-16, 394875), Fraction(128, 119282625),
)
SERIES_ORDERS = (1, 3, 5, 7, 9, 11, 13)
_SWITCH_ORDER = 13


@dataclass(frozen=True)
class RateSweepRow:
    xi: float
    r_z: float
    r_x: float


def _series(coeffs, xi: float, order: int) -> float:
    n = (order + 1) // 2
    x2 = xi * xi
    return xi * horner([float(c) for c in coeffs[:n]], x2)


def rate_series_small_xi(p, axis, order: int) -> float:
    """Truncated Taylor series of R_axis about xi = 0.

    ``order`` is the highest odd power kept; 1, 3, 5 are the documented
    truncations and the longer ones back the small-xi switchover.
    """
    xi = as_xi(p)
    if xi > 0.5:
        raise DomainError(f"series is only offered for xi <= 0.5, got {xi}")
    if order not in SERIES_ORDERS:
        raise DomainError(f"unsupported series order {order}; choose from {SERIES_ORDERS}")
    coeffs = _RZ_SERIES if Axis.parse(axis) is Axis.LONGITUDINAL else _RX_SERIES
    return _series(coeffs, xi, order)


def rate_longitudinal_closed(xi: float) -> float:
    s, c = math.sin(2.0 * xi), math.cos(2.0 * xi)
    x2 = xi * xi
    return ((3.0 - 5.0 * x2) * s + 2.0 * xi * (x2 - 3.0) * c) / (2.0 * x2 * x2)


def rate_transverse_closed(xi: float) -> float:
    s, c = math.sin(2.0 * xi), math.cos(2.0 * xi)
    x2 = xi * xi
    # prefactor formed first so that R_x(1) is exactly zero
    prefactor = x2 - 1.0
    return prefactor * ((4.0 * x2 - 3.0) * s + 6.0 * xi * c) / (4.0 * x2 * x2)


def rate_longitudinal(p) -> float:
    """R_z(xi): growth rate of the velocity variance normal to the mirror."""
    xi = as_xi(p)
    if xi < SERIES_SWITCH:
        return _series(_RZ_SERIES, xi, _SWITCH_ORDER)
    return rate_longitudinal_closed(xi)


def rate_transverse(p) -> float:
    """R_x(xi): growth rate of the velocity variance parallel to the mirror."""
    xi = as_xi(p)
    if xi < SERIES_SWITCH:
        return _series(_RX_SERIES, xi, _SWITCH_ORDER)
    return rate_transverse_closed(xi)


def rate(axis, p) -> float:
    if Axis.parse(axis) is Axis.LONGITUDINAL:
        return rate_longitudinal(p)
    return rate_transverse(p)


def rate_asymptotic_large_xi(p, axis) -> float:
    """Leading high-frequency behaviour: sin(2 xi) for x, cos(2 xi)/xi for z."""
    xi = as_xi(p)
    if xi < 5.0:
        raise DomainError(f"asymptotic form requires xi >= 5, got {xi}")
    if Axis.parse(axis) is Axis.TRANSVERSE:
        return math.sin(2.0 * xi)
    return math.cos(2.0 * xi) / xi


def _golden_max(f, a: float, b: float, tol: float) -> float:
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def find_first_maximum(axis, lo: float, hi: float, grid_points: int = 512):
    """Locate the first interior local maximum of R_axis on ``[lo, hi]``.

    A uniform scan picks the first grid point that beats both neighbours;
    golden-section search then refines inside the adjacent cells.

    Returns
    -------
    tuple of float
        ``(xi_star, r_star)``.

    Raises
    ------
    BracketError
        If the scan finds no interior local maximum.
    """
    axis = Axis.parse(axis)
    if not (0.0 < lo < hi) or not math.isfinite(hi):
        raise DomainError(f"need 0 < lo < hi, got lo={lo}, hi={hi}")
    if grid_points < 3:
        raise DomainError("grid_points must be at least 3")
    f = rate_longitudinal if axis is Axis.LONGITUDINAL else rate_transverse
    grid = np.linspace(lo, hi, grid_points)
    values = np.array([f(x) for x in grid])
    interior = (values[1:-1] > values[:-2]) & (values[1:-1] >= values[2:])
    hits = np.flatnonzero(interior)
    if hits.size == 0:
        raise BracketError(f"no interior maximum of R_{axis.value} in [{lo}, {hi}]")
    i = int(hits[0]) + 1
    xi_star = _golden_max(f, float(grid[i - 1]), float(grid[i + 1]), 1e-10)
    return xi_star, f(xi_star)


def sweep_rates(xi_min: float, xi_max: float, steps: int) -> list[RateSweepRow]:
    """Evaluate both rates on a uniform grid, endpoints included."""
    if not (0.0 < xi_min < xi_max) or not math.isfinite(xi_max):
        raise DomainError(f"need 0 < xi_min < xi_max, got {xi_min}, {xi_max}")
    if int(steps) != steps or steps < 2:
        raise DomainError(f"steps must be an integer >= 2, got {steps}")
    grid = np.linspace(xi_min, xi_max, int(steps))
    return [
        RateSweepRow(float(x), rate_longitudinal(float(x)), rate_transverse(float(x)))
        for x in grid
    ]


__all__ = [
    "DimensionlessPoint",
    "RateSweepRow",
    "SERIES_SWITCH",
    "find_first_maximum",
    "rate",
    "rate_asymptotic_large_xi",
    "rate_longitudinal",
    "rate_series_small_xi",
    "rate_transverse",
    "sweep_rates",
]
