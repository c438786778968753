"""Cosine transforms of rational kernels by contour closing and residues.

A kernel is ``scale * N(tau - shift) / prod_k (tau - p_k)**m_k``. For the
regulated mirror kernels the shift is ``i*eps`` and the poles sit at
``+-2d + i*eps``, which is the same as substituting ``tau -> tau - i*eps``
in the unregulated expression.

Residues are obtained numerically: the trapezoidal rule on a circle
around a pole converges geometrically, which avoids hand-written
derivative formulas for fourth- and fifth-order poles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import Axis, as_xi
from .errors import DomainError, GeometryError, PrescriptionError
from .extrapolation import extrapolate_epsilon

RESIDUE_EPSILON_LADDER = (1e-3, 5e-4, 2.5e-4, 1.25e-4)


@dataclass(frozen=True)
class ContourPolicy:
    circle_radius_fraction: float = 0.25
    nodes_per_circle: int = 64

    def __post_init__(self):
        if not 0.0 < self.circle_radius_fraction < 0.5:
            raise DomainError("circle_radius_fraction must lie in (0, 0.5)")
        if self.nodes_per_circle < 32:
            raise DomainError("nodes_per_circle must be at least 32")


DEFAULT_POLICY = ContourPolicy()


@dataclass(frozen=True)
class RationalKernel:
    numerator_coefficients: tuple
    poles: tuple
    scale: float = 1.0
    shift: complex = 0j
    label: str = field(default="", compare=False)

    def __post_init__(self):
        num = tuple(float(c) for c in self.numerator_coefficients)
        poles = tuple((complex(p), int(m)) for p, m in self.poles)
        object.__setattr__(self, "numerator_coefficients", num)
        object.__setattr__(self, "poles", poles)
        if not poles:
            raise DomainError("a kernel needs at least one pole")
        if any(m < 1 for _, m in poles):
            raise DomainError("pole orders must be positive")
        locations = [p for p, _ in poles]
        for i, a in enumerate(locations):
            for b in locations[i + 1:]:
                if a == b:
                    raise DomainError("pole locations must be distinct")
        degree = len(num) - 1
        while degree > 0 and num[degree] == 0.0:
            degree -= 1
        if degree + 2 > self.total_order:
            raise DomainError("kernel must decay at least as tau**-2 for contour closing")

    @property
    def total_order(self) -> int:
        return sum(m for _, m in self.poles)

    def __call__(self, tau):
        tau = np.asarray(tau, dtype=complex)
        shifted = tau - self.shift
        num = np.zeros_like(tau)
        for c in reversed(self.numerator_coefficients):
            num = num * shifted + c
        den = np.ones_like(tau)
        for p, m in self.poles:
            den = den * (tau - p) ** m
        return self.scale * num / den


def _regulated_poles(d: float, epsilon: float, order: int):
    if not (d > 0.0 and math.isfinite(d)):
        raise DomainError(f"mirror distance must be positive, got {d!r}")
    if not 0.0 < epsilon < d / 10.0:
        raise DomainError(f"epsilon must lie in (0, d/10), got {epsilon!r}")
    return ((2.0 * d + 1j * epsilon, order), (-2.0 * d + 1j * epsilon, order))


def make_kernel_longitudinal(d: float, epsilon: float) -> RationalKernel:
    """``2 (tau^2 + 20 d^2) / [(tau - i eps)^2 - 4 d^2]^4``."""
    poles = _regulated_poles(d, epsilon, 4)
    return RationalKernel((40.0 * d * d, 0.0, 2.0), poles, 1.0, 1j * epsilon, "F_z")


def make_kernel_transverse(d: float, epsilon: float) -> RationalKernel:
    """``-4 (40 d^4 + 34 d^2 tau^2 + tau^4) / [(tau - i eps)^2 - 4 d^2]^5``."""
    poles = _regulated_poles(d, epsilon, 5)
    d2 = d * d
    return RationalKernel((40.0 * d2 * d2, 0.0, 34.0 * d2, 0.0, 1.0), poles, -4.0, 1j * epsilon, "F_x")


def make_kernel(axis, d: float, epsilon: float) -> RationalKernel:
    if Axis.parse(axis) is Axis.LONGITUDINAL:
        return make_kernel_longitudinal(d, epsilon)
    return make_kernel_transverse(d, epsilon)


def _default_radius(kernel: RationalKernel, index: int, policy: ContourPolicy) -> float:
    p = kernel.poles[index][0]
    others = [abs(q - p) for j, (q, _) in enumerate(kernel.poles) if j != index]
    scale = min(others) if others else max(1.0, abs(p))
    return policy.circle_radius_fraction * scale


def residue(kernel: RationalKernel, omega: float, pole_index: int,
            policy: ContourPolicy = DEFAULT_POLICY, radius: float | None = None,
            sign: int = 1) -> complex:
    """Residue of ``kernel(tau) * exp(sign * i * omega * tau)`` at one pole.

    Computed as ``(1/2 pi i)`` times the trapezoidal contour integral on a
    circle centred at the pole.
    """
    if not 0 <= pole_index < len(kernel.poles):
        raise DomainError(f"pole_index {pole_index} out of range")
    if not (omega >= 0.0 and math.isfinite(omega)):
        raise DomainError(f"omega must be finite and non-negative, got {omega!r}")
    p = kernel.poles[pole_index][0]
    if radius is None:
        radius = _default_radius(kernel, pole_index, policy)
    if radius <= 0.0:
        raise GeometryError("contour radius must be positive")
    for j, (q, _) in enumerate(kernel.poles):
        if j != pole_index and abs(q - p) <= radius:
            raise GeometryError(f"contour of radius {radius} reaches pole {q}")
    n = policy.nodes_per_circle
    offsets = radius * np.exp(2j * np.pi * np.arange(n) / n)
    z = p + offsets
    values = kernel(z) * np.exp(sign * 1j * omega * z) * offsets
    return complex(values.mean())


def _cosine_parts(kernel, omega, policy, allow_lower_half_plane):
    upper, lower = [], []
    for i, (p, _) in enumerate(kernel.poles):
        if p.imag > 0.0:
            upper.append(i)
        elif p.imag < 0.0 and allow_lower_half_plane:
            lower.append(i)
        else:
            raise PrescriptionError(f"pole {p} is not strictly above the real axis")
    if omega == 0.0 and not lower:
        # both exponential halves are closed upward
        return 2j * math.pi * sum(residue(kernel, 0.0, i, policy) for i in upper)
    total = 1j * math.pi * sum(residue(kernel, omega, i, policy) for i in upper)
    total -= 1j * math.pi * sum(residue(kernel, omega, i, policy, sign=-1) for i in lower)
    return total


def oscillatory_cosine_integral(kernel: RationalKernel, omega: float,
                                policy: ContourPolicy = DEFAULT_POLICY,
                                full_output: bool = False,
                                allow_lower_half_plane: bool = False):
    """Integral of ``kernel(tau) cos(omega tau)`` over the real line.

    The ``exp(+i omega tau)`` half is closed in the upper half-plane; the
    ``exp(-i omega tau)`` half closes below, where a correctly regulated
    kernel has no poles. With ``allow_lower_half_plane`` the lower poles
    are included for that half, which handles kernels such as a
    Lorentzian that straddle the axis.

    With ``full_output`` the pair ``(value, imaginary_residual)`` is
    returned instead of the real value alone.
    """
    total = _cosine_parts(kernel, float(omega), policy, allow_lower_half_plane)
    if full_output:
        return total.real, total.imag
    return total.real


def rate_via_residues(p, axis, ladder=RESIDUE_EPSILON_LADDER,
                      policy: ContourPolicy = DEFAULT_POLICY) -> float:
    """R_axis(xi) rebuilt from residues at d = 1, omega = xi.

    The cosine integral of the regulated kernel is taken on the epsilon
    ladder, extrapolated to epsilon -> 0 and mapped to the rate through
    ``R = 16 d I / (pi omega^4)``.
    """
    xi = as_xi(p)
    axis = Axis.parse(axis)
    samples = []
    magnitude = 0.0
    for eps in ladder:
        kernel = make_kernel(axis, 1.0, eps)
        samples.append((eps, oscillatory_cosine_integral(kernel, xi, policy)))
        magnitude = max(magnitude, sum(abs(residue(kernel, xi, i, policy))
                                       for i in range(len(kernel.poles))))
    limit, _ = extrapolate_epsilon(samples, atol=1e-12 * math.pi * magnitude)
    return 16.0 * limit / (math.pi * xi**4)
