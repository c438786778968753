"""SI scenarios mapped onto the dimensionless rates.

Everything routes through Lorentz-Heaviside natural units with
``hbar = c = 1`` and lengths in meters: a charge ``n e`` becomes
``q^2 = 4 pi alpha n^2``, a mass becomes its inverse reduced Compton
wavelength, a time ``t`` becomes ``c t`` and a field energy density
``eps0 E^2 / 2`` becomes ``E^2 / 2`` in units of ``hbar c``.
Squared velocities come back to SI through ``c^2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core import Axis
from .errors import DomainError, ScenarioError
from .radiation import s_total
from .rates import rate

PLASMA_THRESHOLD_M = 0.1e-6
LINEAR_REGIME_LIGHT_TIMES = 100.0


@dataclass(frozen=True)
class PhysicalConstants:
    """CODATA 2018 values in SI units."""

    elementary_charge: float = 1.602176634e-19
    electron_mass: float = 9.1093837015e-31
    reduced_planck: float = 1.054571817e-34
    light_speed: float = 299792458.0
    boltzmann: float = 1.380649e-23
    vacuum_permittivity: float = 8.8541878128e-12
    fine_structure: float = 7.2973525693e-3

    def reduced_compton(self, mass_kg: float) -> float:
        return self.reduced_planck / (mass_kg * self.light_speed)


CODATA_2018 = PhysicalConstants()


@dataclass(frozen=True)
class Scenario:
    """A driven charge in front of a mirror, in SI units.

    Exactly one of ``peak_field_V_per_m`` and ``intensity_W_per_cm2`` is
    given. Intensity is the cycle-averaged Poynting flux ``eps0 c E0^2 / 2``.
    """

    charge_multiple: float
    mass_kg: float
    distance_m: float
    duration_s: float
    omega_rad_per_s: float
    peak_field_V_per_m: float | None = None
    intensity_W_per_cm2: float | None = None
    constants: PhysicalConstants = field(default=CODATA_2018, compare=False)

    def __post_init__(self):
        violations = []
        for name in ("charge_multiple", "mass_kg", "distance_m", "duration_s", "omega_rad_per_s"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                violations.append(f"{name} must be positive, got {v!r}")
        drives = [v for v in (self.peak_field_V_per_m, self.intensity_W_per_cm2) if v is not None]
        if len(drives) != 1:
            violations.append("give exactly one of peak_field_V_per_m and intensity_W_per_cm2")
        elif not (math.isfinite(drives[0]) and drives[0] > 0):
            violations.append(f"drive must be positive, got {drives[0]!r}")
        if violations:
            raise ScenarioError(violations)

    @property
    def peak_field(self) -> float:
        if self.peak_field_V_per_m is not None:
            return float(self.peak_field_V_per_m)
        k = self.constants
        intensity = self.intensity_W_per_cm2 * 1e4
        return math.sqrt(2.0 * intensity / (k.vacuum_permittivity * k.light_speed))

    @property
    def intensity(self) -> float:
        """Cycle-averaged intensity in W/m^2."""
        k = self.constants
        return 0.5 * k.vacuum_permittivity * k.light_speed * self.peak_field**2

    @property
    def amplitude(self) -> float:
        """Drive amplitude ``q E0 / (m omega^2)`` in meters."""
        q = self.charge_multiple * self.constants.elementary_charge
        return q * self.peak_field / (self.mass_kg * self.omega_rad_per_s**2)

    @property
    def xi(self) -> float:
        return self.omega_rad_per_s * self.distance_m / self.constants.light_speed


@dataclass(frozen=True)
class EstimateReport:
    xi: float
    delta_T_z: float
    delta_T_x: float
    variance_rate_z: float
    variance_rate_x: float
    classical_ratio: float
    dissipation_ratio: float
    validity_flags: tuple = ()

    def as_dict(self) -> dict:
        return {
            "classical_ratio": self.classical_ratio,
            "delta_T": {"x": self.delta_T_x, "z": self.delta_T_z},
            "dissipation_ratio": self.dissipation_ratio,
            "validity_flags": list(self.validity_flags),
            "variance_rate": {"x": self.variance_rate_x, "z": self.variance_rate_z},
            "xi": self.xi,
        }


def validity_check(s: Scenario, plasma_threshold_m: float = PLASMA_THRESHOLD_M) -> list[str]:
    """Flags for regimes where the small-amplitude, long-time model breaks down."""
    c = s.constants.light_speed
    flags = []
    if s.amplitude >= 0.1 * s.distance_m:
        flags.append("amplitude")
    if s.amplitude * s.omega_rad_per_s >= 0.1 * c:
        flags.append("velocity")
    if s.distance_m < plasma_threshold_m:
        flags.append("plasma_wavelength")
    if s.duration_s <= LINEAR_REGIME_LIGHT_TIMES * s.distance_m / c:
        flags.append("short_duration")
    return flags


def _require_model_bounds(s: Scenario) -> None:
    bad = [f for f in validity_check(s) if f in ("amplitude", "velocity")]
    if bad:
        messages = {
            "amplitude": f"amplitude {s.amplitude:.3g} m is not below 0.1 d",
            "velocity": f"peak velocity {s.amplitude * s.omega_rad_per_s:.3g} m/s is not below 0.1 c",
        }
        raise ScenarioError([messages[f] for f in bad])


def _natural(s: Scenario):
    k = s.constants
    q2 = 4.0 * math.pi * k.fine_structure * s.charge_multiple**2
    m = 1.0 / k.reduced_compton(s.mass_kg)
    field2 = k.vacuum_permittivity * s.peak_field**2 / (k.reduced_planck * k.light_speed)
    return q2, m, field2


def to_dimensionless(s: Scenario):
    """Return ``(xi, prefactor)``.

    ``prefactor`` is ``q^4 E0^2 t / (16 pi m^4 d)`` in natural units, the
    velocity variance per unit rate in units of ``c^2``.
    """
    _require_model_bounds(s)
    q2, m, field2 = _natural(s)
    t = s.constants.light_speed * s.duration_s
    prefactor = q2 * q2 * field2 * t / (16.0 * math.pi * m**4 * s.distance_m)
    return s.xi, prefactor


def variance_rate_si(s: Scenario, axis) -> float:
    """``d<dv^2>/dt`` in m^2/s^3."""
    xi, prefactor = to_dimensionless(s)
    return s.constants.light_speed**2 * prefactor * rate(axis, xi) / s.duration_s


def temperature_per_unit_rate(s: Scenario) -> float:
    """Effective temperature change for ``R = 1``, in kelvin."""
    _, prefactor = to_dimensionless(s)
    k = s.constants
    return s.mass_kg * k.light_speed**2 * prefactor / k.boltzmann


def temperature_coefficient(s: Scenario) -> float:
    """Kelvin per unit rate per ``(W/cm^2) * s / um``, independent of I, t and d."""
    intensity_W_per_cm2 = s.intensity * 1e-4
    return temperature_per_unit_rate(s) * (s.distance_m * 1e6) / (intensity_W_per_cm2 * s.duration_s)


def delta_temperature(s: Scenario, axis) -> float:
    """``m <dv^2> / k_B`` along one axis; negative values mean cooling."""
    return temperature_per_unit_rate(s) * rate(axis, s.xi)


def classical_ratio_coefficient(s: Scenario) -> float:
    """``q^2 t / (8 pi m^2 d^3)`` in natural units, the factor in front of ``xi^2 R_z``."""
    _require_model_bounds(s)
    q2, m, _ = _natural(s)
    t = s.constants.light_speed * s.duration_s
    return q2 * t / (8.0 * math.pi * m * m * s.distance_m**3)


def classical_ratio(s: Scenario) -> float:
    """Fluctuation variance along z over the mean square of the driven velocity."""
    xi = s.xi
    return classical_ratio_coefficient(s) * xi * xi * rate(Axis.LONGITUDINAL, xi)


def dissipation_coefficient(s: Scenario) -> float:
    """``2 q^2 omega / (3 m)`` in natural units."""
    _require_model_bounds(s)
    q2, m, _ = _natural(s)
    omega = s.omega_rad_per_s / s.constants.light_speed
    return 2.0 * q2 * omega / (3.0 * m)


def dissipation_ratio(s: Scenario) -> float:
    """Energy radiated per cycle over the mean kinetic energy of the drive."""
    return dissipation_coefficient(s) * s_total(s.xi)


def estimate(s: Scenario) -> EstimateReport:
    return EstimateReport(
        xi=s.xi,
        delta_T_z=delta_temperature(s, Axis.LONGITUDINAL),
        delta_T_x=delta_temperature(s, Axis.TRANSVERSE),
        variance_rate_z=variance_rate_si(s, Axis.LONGITUDINAL),
        variance_rate_x=variance_rate_si(s, Axis.TRANSVERSE),
        classical_ratio=classical_ratio(s),
        dissipation_ratio=dissipation_ratio(s),
        validity_flags=tuple(validity_check(s)),
    )


def electron_scenario(distance_m: float, duration_s: float, omega_rad_per_s: float,
                      intensity_W_per_cm2: float | None = None,
                      peak_field_V_per_m: float | None = None) -> Scenario:
    if intensity_W_per_cm2 is None and peak_field_V_per_m is None:
        raise DomainError("give a drive intensity or peak field")
    return Scenario(1.0, CODATA_2018.electron_mass, distance_m, duration_s, omega_rad_per_s,
                    peak_field_V_per_m=peak_field_V_per_m, intensity_W_per_cm2=intensity_W_per_cm2)
