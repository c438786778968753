"""Bessel functions of integer order 0..2 and a C3 smoothstep envelope.

Only real, non-negative arguments are supported. Small and moderate
arguments use the ascending power series; above ``SERIES_CUTOFF`` the
Hankel large-argument expansion takes over.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

SERIES_CUTOFF = 12.0


@dataclass(frozen=True)
class SeriesAccuracy:
    """Truncation controls for the power and asymptotic series."""

    relative_tolerance: float = 1e-17
    max_terms: int = 200

    def __post_init__(self):
        if not 0.0 < self.relative_tolerance <= 1e-6:
            raise DomainError("relative_tolerance must lie in (0, 1e-6]")
        if self.max_terms < 8:
            raise DomainError("max_terms must be at least 8")


DEFAULT_ACCURACY = SeriesAccuracy()


def _check_argument(x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"Bessel argument must be finite, got {x!r}")
    if x < 0.0:
        raise DomainError(f"Bessel argument must be non-negative, got {x!r}")
    return x


def bessel_series(n: int, x: float, accuracy: SeriesAccuracy = DEFAULT_ACCURACY) -> float:
    """Ascending series ``sum_k (-1)^k (x/2)^(2k+n) / (k! (k+n)!)``."""
    half = 0.5 * x
    term = half**n / math.factorial(n)
    total = term
    q = -half * half
    for k in range(1, accuracy.max_terms):
        term *= q / (k * (k + n))
        total += term
        if abs(term) <= accuracy.relative_tolerance * abs(total):
            break
    return total


def bessel_asymptotic(n: int, x: float, accuracy: SeriesAccuracy = DEFAULT_ACCURACY) -> float:
    """Hankel expansion ``sqrt(2/(pi x)) (P cos chi - Q sin chi)``.

    The series is asymptotic, so summation stops at the smallest term.
    """
    mu = 4.0 * n * n
    p_sum = 1.0
    q_sum = 0.0
    term = 1.0
    previous = math.inf
    for k in range(1, accuracy.max_terms):
        term *= (mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
        size = abs(term)
        if size > previous:
            break
        # terms alternate between Q (odd k) and P (even k), each with its own sign
        if k % 2:
            q_sum += term * (-1) ** ((k - 1) // 2)
        else:
            p_sum += term * (-1) ** (k // 2)
        if size <= accuracy.relative_tolerance:
            break
        previous = size
    chi = x - (0.5 * n + 0.25) * math.pi
    return math.sqrt(2.0 / (math.pi * x)) * (p_sum * math.cos(chi) - q_sum * math.sin(chi))


def _bessel(n: int, x: float) -> float:
    x = _check_argument(x)
    if x <= SERIES_CUTOFF:
        return bessel_series(n, x)
    return bessel_asymptotic(n, x)


def bessel_j0(x: float) -> float:
    return _bessel(0, x)


def bessel_j1(x: float) -> float:
    return _bessel(1, x)


def bessel_j2(x: float) -> float:
    """Bessel function of the first kind of order two.

    Parameters
    ----------
    x : float
        Non-negative, finite argument.

    Returns
    -------
    float
        ``J_2(x)``; relative error below 1e-10 on the series branch.
    """
    return _bessel(2, x)


def smoothstep_c3(s: float) -> float:
    """Seventh-degree ramp from 0 to 1 with three vanishing end derivatives."""
    s = float(s)
    if not 0.0 <= s <= 1.0:
        raise DomainError(f"smoothstep argument must lie in [0, 1], got {s!r}")
    return s**4 * (35.0 + s * (-84.0 + s * (70.0 - 20.0 * s)))
