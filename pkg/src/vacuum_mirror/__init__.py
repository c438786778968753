"""Velocity-variance growth of a driven charge near a reflecting mirror.

The closed-form rates, the oracles that check them, the competing
radiation shot noise and the conversion of all of it to SI scenarios.
"""

from .core import Axis, DimensionlessPoint
from .errors import (
    BracketError,
    ConvergenceError,
    DivisionError,
    DomainError,
    GeometryError,
    NonlinearityError,
    PrescriptionError,
    ResolutionError,
    ScenarioError,
    VacuumMirrorError,
)
from .quadrature import ExpansionOrder, MeshSpec, TrajectoryWindow, growth_rate, variance_double_integral
from .radiation import (
    DipoleConfig,
    Moment,
    ShotReport,
    angular_integral_oracle,
    angular_power,
    combined_curve,
    energy_per_cycle,
    fluctuation_to_shot_ratio,
    s_longitudinal,
    s_total,
    s_transverse,
    shot_variance_rate,
    total_power,
)
from .rates import (
    find_first_maximum,
    rate,
    rate_asymptotic_large_xi,
    rate_longitudinal,
    rate_series_small_xi,
    rate_transverse,
    sweep_rates,
)
from .residues import RationalKernel, oscillatory_cosine_integral, rate_via_residues, residue
from .special_functions import bessel_j0, bessel_j1, bessel_j2, smoothstep_c3
from .units import CODATA_2018, EstimateReport, PhysicalConstants, Scenario, estimate
from .verification import VerificationReport, run_suite

__version__ = "0.1.0"
