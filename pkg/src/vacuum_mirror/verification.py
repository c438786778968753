"""Cross-check batteries comparing closed forms with independent oracles.

Each suite returns a ``VerificationReport``. A case compares an
``actual`` value against an ``expected`` one under one of four rules:

``relative``
    ``|a - e| / max(|e|, floor) <= tol``
``absolute``
    ``|a - e| <= tol``
``greater``
    ``a > e``
``factor``
    ``1/tol <= a/e <= tol``
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import Axis
from .errors import DomainError
from .quadrature import growth_rate
from .radiation import (
    Moment,
    angular_integral_oracle,
    combined_curve,
    s_longitudinal,
    s_total,
    s_transverse,
)
from .rates import (
    SERIES_SWITCH,
    rate,
    rate_longitudinal,
    rate_longitudinal_closed,
    rate_series_small_xi,
    rate_transverse,
    rate_transverse_closed,
)
from .residues import rate_via_residues
from .units import (
    CODATA_2018,
    classical_ratio_coefficient,
    delta_temperature,
    dissipation_coefficient,
    electron_scenario,
    temperature_coefficient,
    variance_rate_si,
)

SCHEMA_VERSION = "1"
RELATIVE_FLOOR = 1e-3
RESIDUE_GRID = (0.5, 1.0, 2.0, 2.5, 4.0, 6.0, 10.0)
QUADRATURE_GRID = (0.5, 1.0, 2.0, 4.0)
RADIATION_GRID = (0.5, 1.0, 2.0, math.pi, 5.0, 10.0)
POSITIVITY_GRID = tuple(round(0.05 * k, 2) for k in range(1, 401))
SUITES = ("kernels", "residues", "quadrature", "radiation", "units")

_KINDS = ("relative", "absolute", "greater", "factor")


@dataclass(frozen=True)
class Case:
    id: str
    expected: float
    actual: float
    tolerance: float
    kind: str = "relative"
    adjustable: bool = False

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise DomainError(f"unknown case kind {self.kind!r}")
        # numpy scalars would leak into the JSON report
        for name in ("expected", "actual", "tolerance"):
            object.__setattr__(self, name, float(getattr(self, name)))

    @property
    def deviation(self) -> float:
        a, e = self.actual, self.expected
        if self.kind == "relative":
            return abs(a - e) / max(abs(e), RELATIVE_FLOOR)
        if self.kind == "absolute":
            return abs(a - e)
        if self.kind == "factor":
            return abs(math.log(a / e)) if a / e > 0 else math.inf
        return 0.0 if a > e else e - a

    @property
    def passed(self) -> bool:
        if not (math.isfinite(self.actual) and math.isfinite(self.expected)):
            return False
        if self.kind == "greater":
            return self.actual > self.expected
        if self.kind == "factor":
            return self.deviation <= math.log(self.tolerance)
        return self.deviation <= self.tolerance

    def as_dict(self) -> dict:
        return {
            "actual": self.actual,
            "deviation": self.deviation,
            "expected": self.expected,
            "id": self.id,
            "kind": self.kind,
            "passed": bool(self.passed),
            "tolerance": self.tolerance,
        }


@dataclass(frozen=True)
class VerificationReport:
    suite: str
    cases: tuple = field(default_factory=tuple)

    @property
    def max_relative_deviation(self) -> float:
        devs = [c.deviation for c in self.cases if c.kind == "relative"]
        return max(devs) if devs else 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    def failures(self) -> list[Case]:
        return [c for c in self.cases if not c.passed]

    def as_dict(self) -> dict:
        return {
            "cases": [c.as_dict() for c in self.cases],
            "max_relative_deviation": self.max_relative_deviation,
            "passed": self.passed,
            "schema_version": SCHEMA_VERSION,
            "suite": self.suite,
        }


def _apply_tolerance(cases, tolerance):
    if tolerance is None:
        return tuple(cases)
    if not (math.isfinite(tolerance) and tolerance > 0.0):
        raise DomainError(f"tolerance must be positive, got {tolerance!r}")
    return tuple(
        Case(c.id, c.expected, c.actual, tolerance, c.kind, True) if c.adjustable else c
        for c in cases
    )


def kernels_suite() -> list[Case]:
    cases = []
    for xi in (0.01, 0.02, 0.05):
        cases.append(Case(f"small_xi.z.{xi}", -4.0 * xi / 15.0, rate_longitudinal(xi), 0.01))
        cases.append(Case(f"small_xi.x.{xi}", 8.0 * xi / 15.0, rate_transverse(xi), 0.01))
    for xi in (20.0, 25.0, 30.0):
        cases.append(Case(f"large_xi.x.{xi:g}", math.sin(2 * xi), rate_transverse(xi), 3.0 / xi, "absolute"))
        cases.append(Case(f"large_xi.z.{xi:g}", math.cos(2 * xi), xi * rate_longitudinal(xi), 3.0 / xi, "absolute"))
    band = np.linspace(0.8 * SERIES_SWITCH, 1.2 * SERIES_SWITCH, 41)
    for name, closed, axis in (("z", rate_longitudinal_closed, "z"), ("x", rate_transverse_closed, "x")):
        worst = max(abs(rate_series_small_xi(x, axis, 13) / closed(x) - 1.0) for x in band)
        cases.append(Case(f"switchover_band.{name}", 0.0, worst, 1e-10, "absolute", True))
    cases.append(Case("transverse_zero_at_1", 0.0, rate_transverse(1.0), 0.0, "absolute"))
    grid = np.linspace(0.01, 40.0, 4000)
    cases.append(Case("bound.z", 0.0, max(abs(rate_longitudinal(x)) for x in grid), 0.6, "absolute"))
    cases.append(Case("bound.x", 0.0, max(abs(rate_transverse(x)) for x in grid), 1.2, "absolute"))
    return cases


def residues_suite() -> list[Case]:
    return [
        Case(f"residue.{axis}.{xi:g}", rate(axis, xi), rate_via_residues(xi, axis), 1e-8, adjustable=True)
        for axis in ("z", "x")
        for xi in RESIDUE_GRID
    ]


def quadrature_suite() -> list[Case]:
    return [
        Case(f"quadrature.{axis}.{xi:g}", rate(axis, xi), growth_rate(axis, xi), 0.03, adjustable=True)
        for axis in ("z", "x")
        for xi in QUADRATURE_GRID
    ]


def radiation_suite() -> list[Case]:
    cases = []
    closed = {Moment.TOTAL: s_total, Moment.Z_PROJECTED: s_longitudinal, Moment.X_PROJECTED: s_transverse}
    for moment, f in closed.items():
        for xi in RADIATION_GRID:
            cases.append(Case(f"angular.{moment.value}.{xi:.6g}", f(xi),
                              angular_integral_oracle(moment, xi), 1e-8, adjustable=True))
    for axis in (Axis.LONGITUDINAL, Axis.TRANSVERSE):
        lowest = min(combined_curve(axis, xi) for xi in POSITIVITY_GRID)
        cases.append(Case(f"combined_positive.{axis.value}", 0.0, lowest, 0.0, "greater"))
    return cases


def units_suite() -> list[Case]:
    k = CODATA_2018
    benchmark = electron_scenario(1e-6, 1.0, 2.5 * k.light_speed / 1e-6, intensity_W_per_cm2=1.0)
    ratio_case = electron_scenario(30e-6, 1.0, 1e14, intensity_W_per_cm2=1.0)
    alpha = k.elementary_charge**2 / (4 * math.pi * k.vacuum_permittivity * k.reduced_planck * k.light_speed)
    identity = (benchmark.mass_kg * variance_rate_si(benchmark, "z") * benchmark.duration_s / k.boltzmann)
    return [
        Case("anchor.delta_T", 1e-8, temperature_coefficient(benchmark), 2.0, "factor"),
        Case("anchor.classical_ratio", 0.16, classical_ratio_coefficient(benchmark), 0.02, "absolute"),
        Case("anchor.dissipation", 8e-9, dissipation_coefficient(ratio_case), 0.2),
        Case("constants.fine_structure", k.fine_structure, alpha, 1e-9),
        Case("identity.temperature", delta_temperature(benchmark, "z"), identity, 1e-12),
    ]


_BUILDERS = {
    "kernels": kernels_suite,
    "residues": residues_suite,
    "quadrature": quadrature_suite,
    "radiation": radiation_suite,
    "units": units_suite,
}


def run_suite(name: str, tolerance: float | None = None) -> VerificationReport:
    """Run one named suite; ``tolerance`` replaces the oracle-comparison tolerances."""
    if name not in _BUILDERS:
        raise DomainError(f"unknown suite {name!r}; choose from {SUITES + ('all',)}")
    return VerificationReport(name, _apply_tolerance(_BUILDERS[name](), tolerance))
