"""Small value types shared across the rate, radiation and unit modules."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainError


class Axis(enum.Enum):
    """Direction of the velocity component.

    ``LONGITUDINAL`` is normal to the mirror (z), ``TRANSVERSE`` is
    parallel to it (x).
    """

    LONGITUDINAL = "z"
    TRANSVERSE = "x"

    @classmethod
    def parse(cls, value: "Axis | str") -> "Axis":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        for axis in cls:
            if key in (axis.value, axis.name.lower()):
                return axis
        raise DomainError(f"unknown axis {value!r}")


@dataclass(frozen=True)
class DimensionlessPoint:
    """Product of drive angular frequency and mean mirror distance."""

    xi: float

    def __post_init__(self):
        if not math.isfinite(self.xi) or self.xi <= 0.0:
            raise DomainError(f"xi must be finite and positive, got {self.xi!r}")


def as_xi(p: "DimensionlessPoint | float") -> float:
    """Accept either a point or a bare float and return a validated xi."""
    if isinstance(p, DimensionlessPoint):
        return p.xi
    return DimensionlessPoint(float(p)).xi


def horner(coeffs, x: float) -> float:
    """Evaluate ``sum(c[k] * x**k)`` with ascending coefficients."""
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc
