"""Radiation of a dipole oscillating in front of a mirror, and its shot noise.

The mirror adds an image dipole, so the far-zone pattern of the pair is
the free dipole pattern times ``cos^2(xi cos(theta))``. The shape factors
``S_T``, ``S_z`` and ``S_x`` are the total power and the two momentum-flux
projections in units where a free dipole gives ``S_T = 1``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import Axis, as_xi
from .errors import DivisionError, DomainError
from .rates import rate_longitudinal, rate_transverse
from .special_functions import bessel_j2

SERIES_SWITCH = 0.1
ORACLE_NODES = 64
_MIN_SHAPE = 1e-14


class Moment(enum.Enum):
    TOTAL = "total"
    Z_PROJECTED = "z"
    X_PROJECTED = "x"


@dataclass(frozen=True)
class DipoleConfig:
    """Peak dipole moment ``p_e = q A``, drive frequency and mirror distance."""

    p_e: float
    omega: float
    d: float

    def __post_init__(self):
        for name in ("p_e", "omega", "d"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0.0):
                raise DomainError(f"{name} must be positive and finite, got {v!r}")

    @property
    def xi(self) -> float:
        return self.omega * self.d

    @property
    def free_power(self) -> float:
        # power of the same dipole without a mirror
        return self.p_e**2 * self.omega**4 / (12.0 * math.pi)


@dataclass(frozen=True)
class ShotReport:
    axis: Axis
    s_value: float
    shot_rate: float
    ratio_fluct_to_shot: float
    combined: float

    def __post_init__(self):
        if self.s_value < 0.0:
            raise DomainError("shape factor must be non-negative")


def _even_series(term, xi: float) -> float:
    # sum_k (-1)^k (2 xi)^(2k) / (2k)! * term(k), to double precision
    x2 = 4.0 * xi * xi
    power = 1.0
    total = 0.0
    for k in range(40):
        if k:
            power *= -x2 / ((2 * k - 1) * (2 * k))
        piece = power * term(k)
        total += piece
        if abs(piece) <= 1e-17 * abs(total):
            break
    return total


def angular_power(theta: float, cfg: DipoleConfig) -> float:
    """Power per unit solid angle at polar angle ``theta`` from the mirror normal."""
    theta = float(theta)
    if not 0.0 <= theta <= 0.5 * math.pi:
        raise DomainError(f"theta must lie in [0, pi/2], got {theta!r}")
    prefactor = cfg.p_e**2 * cfg.omega**4 / (8.0 * math.pi**2)
    return prefactor * math.sin(theta) ** 2 * math.cos(cfg.xi * math.cos(theta)) ** 2


def s_total(p) -> float:
    """Total radiated power relative to a free dipole.

    Tends to 2 as xi -> 0 and to 1 as xi -> infinity.
    """
    xi = as_xi(p)
    if xi < SERIES_SWITCH:
        return 1.0 + 3.0 * _even_series(lambda k: 1.0 / ((2 * k + 1) * (2 * k + 3)), xi)
    return 1.0 + 3.0 / (8.0 * xi**3) * (math.sin(2.0 * xi) - 2.0 * xi * math.cos(2.0 * xi))


def s_longitudinal(p) -> float:
    """Momentum flux normal to the mirror; ``4 xi`` at small xi, ``2 xi`` at large xi."""
    xi = as_xi(p)
    if xi < SERIES_SWITCH:
        return 8.0 * xi * (0.25 + _even_series(lambda k: 2.0 / ((2 * k + 2) * (2 * k + 4)), xi))
    s, c = math.sin(2.0 * xi), math.cos(2.0 * xi)
    x2 = xi * xi
    bracket = -3.0 - 2.0 * x2 + (3.0 - 4.0 * x2) * c + 2.0 * xi * (x2 * xi + 3.0 * s)
    return bracket / (x2 * xi)


def s_transverse(p) -> float:
    """Momentum flux parallel to the mirror, ``xi [1 + 2 J_2(2 xi) / xi^2]``."""
    xi = as_xi(p)
    return xi + 2.0 * bessel_j2(2.0 * xi) / xi


def shape_factor(axis, p) -> float:
    if Axis.parse(axis) is Axis.LONGITUDINAL:
        return s_longitudinal(p)
    return s_transverse(p)


def total_power(cfg: DipoleConfig) -> float:
    return cfg.free_power * s_total(cfg.xi)


def energy_per_cycle(cfg: DipoleConfig) -> float:
    return 2.0 * math.pi * total_power(cfg) / cfg.omega


def projected_power(axis, cfg: DipoleConfig) -> float:
    """Recoil momentum per unit time carried off along one axis.

    The two axes use different normalizations of their shape factors:
    ``p^2 w^4 S_z / (64 pi xi)`` and ``(3/128) p^2 w^4 S_x / xi``.
    """
    xi = cfg.xi
    base = cfg.p_e**2 * cfg.omega**4 / xi
    if Axis.parse(axis) is Axis.LONGITUDINAL:
        return base * s_longitudinal(xi) / (64.0 * math.pi)
    return base * 3.0 * s_transverse(xi) / 128.0


def _check_positive(**values):
    for name, v in values.items():
        if not (math.isfinite(v) and v > 0.0):
            raise DomainError(f"{name} must be positive and finite, got {v!r}")


def shot_variance_rate(axis, q: float, E0: float, m: float, d: float, p) -> float:
    """Growth rate of the velocity variance from photon shot noise.

    Parameters
    ----------
    axis : Axis or str
    q, E0, m, d : float
        Charge, peak drive field, mass and mirror distance, in natural units.
    p : DimensionlessPoint or float
        ``xi = omega d``.

    Returns
    -------
    float
        ``q^4 E0^2 S_z / (64 pi m^4 d)`` or ``(3/128) q^4 E0^2 S_x / (m^4 d)``.
    """
    _check_positive(q=q, E0=E0, m=m, d=d)
    base = q**4 * E0**2 / (m**4 * d)
    if Axis.parse(axis) is Axis.LONGITUDINAL:
        return base * s_longitudinal(p) / (64.0 * math.pi)
    return base * 3.0 * s_transverse(p) / 128.0


def _fluctuation_term(axis: Axis, xi: float) -> float:
    if axis is Axis.LONGITUDINAL:
        return 4.0 * rate_longitudinal(xi)
    return 8.0 * rate_transverse(xi) / (3.0 * math.pi)


def fluctuation_to_shot_ratio(axis, p) -> float:
    """Vacuum-fluctuation variance over shot-noise variance at equal times."""
    axis = Axis.parse(axis)
    xi = as_xi(p)
    s = shape_factor(axis, xi)
    if s < _MIN_SHAPE:
        raise DivisionError(f"shape factor {s:.3g} too small to divide by")
    return _fluctuation_term(axis, xi) / s


def combined_curve(axis, p) -> float:
    """Shot-noise plus fluctuation variance on a common scale.

    ``S_z + 4 R_z`` for z and ``S_x + 8 R_x / (3 pi)`` for x, so that
    ``combined / S - 1`` is the fluctuation-to-shot ratio.
    """
    axis = Axis.parse(axis)
    xi = as_xi(p)
    return shape_factor(axis, xi) + _fluctuation_term(axis, xi)


def shot_report(axis, q: float, E0: float, m: float, d: float, p) -> ShotReport:
    axis = Axis.parse(axis)
    xi = as_xi(p)
    return ShotReport(
        axis=axis,
        s_value=shape_factor(axis, xi),
        shot_rate=shot_variance_rate(axis, q, E0, m, d, xi),
        ratio_fluct_to_shot=fluctuation_to_shot_ratio(axis, xi),
        combined=combined_curve(axis, xi),
    )


@lru_cache(maxsize=None)
def _gauss_unit(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (x + 1.0), 0.5 * w


def angular_integral_oracle(moment, p, nodes: int = ORACLE_NODES) -> float:
    """Gauss-Legendre evaluation of the hemisphere integral behind each S.

    Total and z use ``u = cos(theta)`` on [0, 1]; x is integrated in theta
    on [0, pi/2] because the azimuthal average leaves ``sin^4(theta)``.
    """
    moment = Moment(moment) if not isinstance(moment, Moment) else moment
    xi = as_xi(p)
    u, w = _gauss_unit(nodes)
    if moment is Moment.TOTAL:
        return 3.0 * float(np.dot(w, (1.0 - u * u) * np.cos(xi * u) ** 2))
    if moment is Moment.Z_PROJECTED:
        return 16.0 * xi * float(np.dot(w, u * (1.0 - u * u) * np.cos(xi * u) ** 2))
    theta = 0.5 * math.pi * u
    integral = 0.5 * math.pi * float(np.dot(w, np.sin(theta) ** 4 * np.cos(xi * np.cos(theta)) ** 2))
    return 32.0 * xi * integral / (3.0 * math.pi)
