"""Polynomial extrapolation of regulated values to zero regulator."""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence

from .errors import ConvergenceError, DomainError


class Extrapolation(NamedTuple):
    limit: float
    error: float


def _neville_at_zero(eps: Sequence[float], vals: Sequence[float]) -> float:
    p = list(vals)
    n = len(p)
    for m in range(1, n):
        for i in range(n - m):
            # interpolant through points i..i+m evaluated at 0
            p[i] = (eps[i + m] * p[i] - eps[i] * p[i + 1]) / (eps[i + m] - eps[i])
    return p[0]


def extrapolate_epsilon(samples, atol: float = 0.0) -> Extrapolation:
    """Extrapolate ``(epsilon, value)`` samples to epsilon = 0.

    The limit is the value at zero of the interpolating polynomial through
    every sample. The error estimate is the difference between that limit
    and the one obtained from the finest ``n - 1`` samples.

    Successive differences of the raw values must shrink; differences no
    larger than ``atol`` count as converged noise.
    """
    pts = [(float(e), float(v)) for e, v in samples]
    if len(pts) < 3:
        raise DomainError("need at least three (epsilon, value) samples")
    eps = [e for e, _ in pts]
    vals = [v for _, v in pts]
    if any(not math.isfinite(x) for x in eps + vals):
        raise DomainError("samples must be finite")
    for a, b in zip(eps, eps[1:]):
        if not (a > b > 0.0):
            raise DomainError("epsilon must be positive and strictly decreasing")
        if not 1.2 <= a / b <= 10.0:
            raise DomainError(f"epsilon ratio {a / b:.3g} outside the supported ladder range")

    diffs = [abs(b - a) for a, b in zip(vals, vals[1:])]
    for prev, nxt in zip(diffs, diffs[1:]):
        if nxt > atol and nxt >= prev:
            raise ConvergenceError(
                f"successive differences do not shrink: {prev:.3e} -> {nxt:.3e}"
            )

    limit = _neville_at_zero(eps, vals)
    coarse = _neville_at_zero(eps[1:], vals[1:])
    return Extrapolation(limit, abs(limit - coarse))
