"""Brute-force evaluation of the velocity-variance double time integral.

The boundary part of the field correlation is integrated over the square
``[0, t]^2`` along a windowed sinusoidal trajectory, either in full or
restricted to one term of its second-order expansion in the amplitude.
Integration uses ``tau = t1 - t2`` and ``s = t2``. The tau axis is split
into Gauss-Legendre panels that shrink geometrically toward the regulated
ridges at ``|tau| = 2d``; the outer s integral uses Gauss panels aligned
with the ramp joins, and the trajectory is evaluated pointwise at
``s + tau`` so that no smoothed intermediate enters the ridge sums.

All results are per unit ``q^2 / m^2``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import Axis, as_xi
from .errors import DomainError, NonlinearityError, ResolutionError
from .extrapolation import Extrapolation, extrapolate_epsilon

EPSILON_LADDER = (0.02, 0.01, 0.005)
ORACLE_AMPLITUDE = 0.01
DEFAULT_DURATIONS = (200.0, 300.0, 400.0)
# rounding noise of the transverse ridge sums at the finest regulator, in rate units
RATE_NOISE_FLOOR = 1e-4
# quadrature noise in the rate grows like omega**-4 below this frequency
_NOISE_PIVOT = 0.5

_S_NODES_PER_PANEL = 8
_S_PANELS_PER_PERIOD = 4
_TAU_CORE = 40.0  # in units of d; A-dependent kernels fall as tau**-6
_ROW_CHUNK = 256


class ExpansionOrder(enum.Enum):
    STATIC = "static"
    LINEAR_IN_A = "linear"
    QUADRATIC_SQUARE = "square"
    QUADRATIC_CROSS = "cross"
    FULL = "full"


@dataclass(frozen=True)
class TrajectoryWindow:
    """Sinusoid ``A sin(omega t)`` switched on and off by C3 ramps."""

    omega: float
    duration: float
    amplitude: float = ORACLE_AMPLITUDE
    mean_distance: float = 1.0
    ramp_cycles: int = 3

    def __post_init__(self):
        for name in ("omega", "duration", "mean_distance"):
            value = getattr(self, name)
            if not (value > 0.0 and math.isfinite(value)):
                raise DomainError(f"{name} must be positive and finite, got {value!r}")
        if not (self.amplitude >= 0.0 and math.isfinite(self.amplitude)):
            raise DomainError(f"amplitude must be non-negative, got {self.amplitude!r}")
        if int(self.ramp_cycles) != self.ramp_cycles or self.ramp_cycles < 1:
            raise DomainError("ramp_cycles must be a positive integer")
        if self.amplitude >= 0.1 * self.mean_distance:
            raise DomainError("amplitude must stay below 0.1 * mean_distance")
        if self.amplitude * self.omega >= 0.1:
            raise DomainError("peak speed amplitude * omega must stay below 0.1")
        if self.duration * self.omega / (2.0 * math.pi) < 4 * self.ramp_cycles:
            raise DomainError("duration must span at least 4 * ramp_cycles drive periods")

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.omega

    @property
    def ramp_time(self) -> float:
        return self.ramp_cycles * self.period


@dataclass(frozen=True)
class MeshSpec:
    """Tau-axis resolution: nodes per Gauss panel and the regulator width.

    ``innermost_panel`` is the width of the panels touching each ridge and
    defaults to ``epsilon``.
    """

    epsilon: float
    points_per_pole_width: int = 16
    innermost_panel: float | None = None

    def __post_init__(self):
        if not (self.epsilon > 0.0 and math.isfinite(self.epsilon)):
            raise DomainError(f"epsilon must be positive, got {self.epsilon!r}")
        if self.points_per_pole_width < 8:
            raise DomainError("points_per_pole_width must be at least 8")

    @property
    def ridge_panel(self) -> float:
        return self.epsilon if self.innermost_panel is None else self.innermost_panel


def _envelope(x):
    x = np.clip(x, 0.0, 1.0)
    return x**4 * (35.0 + x * (-84.0 + x * (70.0 - 20.0 * x)))


def window_values(w: TrajectoryWindow, t) -> np.ndarray:
    """Vectorised trajectory profile f(t)."""
    t = np.asarray(t, dtype=float)
    ramp = w.ramp_time
    env = np.minimum(_envelope(t / ramp), _envelope((w.duration - t) / ramp))
    inside = (t >= 0.0) & (t <= w.duration)
    return np.where(inside, env * np.sin(w.omega * t), 0.0)


def window_value(w: TrajectoryWindow, t: float) -> float:
    """f(t): the ramped sinusoid, zero outside ``[0, duration]``."""
    if not math.isfinite(t):
        raise DomainError(f"time must be finite, got {t!r}")
    return float(window_values(w, t))


def _correlation(axis: Axis, tau_c, z_sum):
    tau2 = tau_c * tau_c
    z2 = z_sum * z_sum
    if axis is Axis.LONGITUDINAL:
        return 1.0 / (math.pi**2 * (tau2 - z2) ** 2)
    return -(tau2 + z2) / (math.pi**2 * (tau2 - z2) ** 3)


def boundary_correlation(axis, t1: float, t2: float, w: TrajectoryWindow, epsilon: float) -> float:
    """Real part of the image-charge correlation with ``tau -> tau - i eps``."""
    if not epsilon > 0.0:
        raise DomainError(f"epsilon must be positive, got {epsilon!r}")
    axis = Axis.parse(axis)
    z_sum = 2.0 * w.mean_distance + w.amplitude * (window_value(w, t1) + window_value(w, t2))
    return float(_correlation(axis, complex(t1 - t2, -epsilon), z_sum).real)


def expansion_coefficients(axis, tau_c, d: float):
    """Taylor coefficients of the correlation in ``delta = z1 + z2 - 2d``.

    Returns the zeroth, first and second coefficients, each including the
    overall ``1/pi^2``.
    """
    axis = Axis.parse(axis)
    tau2 = tau_c * tau_c
    d2 = d * d
    q = tau2 - 4.0 * d2
    pi2 = math.pi**2
    if axis is Axis.LONGITUDINAL:
        c0 = 1.0 / q**2
        c1 = 8.0 * d / q**3
        c2 = 2.0 * (tau2 + 20.0 * d2) / q**4
    else:
        c0 = -(tau2 + 4.0 * d2) / q**3
        c1 = -16.0 * d * (2.0 * d2 + tau2) / q**4
        c2 = -4.0 * (40.0 * d2 * d2 + 34.0 * d2 * tau2 + tau2 * tau2) / q**5
    return c0 / pi2, c1 / pi2, c2 / pi2


@lru_cache(maxsize=64)
def _gauss(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def _panel_nodes(edges, n):
    x, w = _gauss(n)
    edges = np.asarray(edges, dtype=float)
    a, b = edges[:-1, None], edges[1:, None]
    half = 0.5 * (b - a)
    return (0.5 * (a + b) + half * x).ravel(), (half * w).ravel()


def _tau_offsets(w: TrajectoryWindow, mesh: MeshSpec, tau_max: float) -> np.ndarray:
    """Panel edges on ``tau >= 0`` as offsets from the ridge at 2d.

    Offsets are built directly so that nodes close to the ridge carry
    their distance to it without cancellation.
    """
    d = w.mean_distance
    ridge = 2.0 * d
    smooth = min(0.5 * d, 0.5 * w.period)
    edges = {0.0}
    step = mesh.ridge_panel
    while step < d:
        edges.update((-step, step))
        step *= 2.0
    inner = step / 2.0
    n = max(1, math.ceil((ridge - inner) / smooth))
    edges.update((np.linspace(0.0, ridge - inner, n + 1) - ridge).tolist())
    edges.add(-ridge)
    core = min(_TAU_CORE * d, tau_max)
    if core - ridge > inner:
        n = max(1, math.ceil((core - ridge - inner) / smooth))
        edges.update(np.linspace(inner, core - ridge, n + 1).tolist())
    # the A-independent tail needs no oscillation resolution
    x = core
    while x < tau_max:
        x = min(tau_max, 1.5 * x)
        edges.add(x - ridge)
    return np.array(sorted(e for e in edges if e <= tau_max - ridge))


def _tau_nodes(w: TrajectoryWindow, mesh: MeshSpec, tau_max: float):
    """Symmetric tau nodes, weights and ridge offsets ``|tau| - 2d``."""
    offsets, wt = _panel_nodes(_tau_offsets(w, mesh, tau_max), mesh.points_per_pole_width)
    near = np.count_nonzero(np.abs(offsets) <= mesh.epsilon)
    if mesh.ridge_panel > mesh.epsilon or near < mesh.points_per_pole_width:
        raise ResolutionError(
            f"only {near} nodes within epsilon={mesh.epsilon} of the ridge; "
            f"need {mesh.points_per_pole_width}"
        )
    tau = 2.0 * w.mean_distance + offsets
    # mirror so the tau <-> -tau symmetry holds node by node
    return (np.concatenate([-tau[::-1], tau]), np.concatenate([wt[::-1], wt]),
            np.concatenate([offsets[::-1], offsets]))


def _local_coefficients(axis: Axis, offset, epsilon: float, d: float):
    """Expansion coefficients at ``|tau| = 2d + offset``, real parts only.

    The factor ``tau^2 - 4 d^2`` is formed as a product of the two pole
    distances. Real parts are even in tau, so the sign of tau is irrelevant.
    """
    tau_c = 2.0 * d + offset - 1j * epsilon
    q = (offset - 1j * epsilon) * (tau_c + 2.0 * d)
    tau2 = tau_c * tau_c
    d2 = d * d
    pi2 = math.pi**2
    if axis is Axis.LONGITUDINAL:
        c0 = 1.0 / q**2
        c1 = 8.0 * d / q**3
        c2 = 2.0 * (tau2 + 20.0 * d2) / q**4
    else:
        c0 = -(tau2 + 4.0 * d2) / q**3
        c1 = -16.0 * d * (2.0 * d2 + tau2) / q**4
        c2 = -4.0 * (40.0 * d2 * d2 + 34.0 * d2 * tau2 + tau2 * tau2) / q**5
    return c0.real / pi2, c1.real / pi2, c2.real / pi2


def _s_nodes(w: TrajectoryWindow):
    """Gauss panels on ``[0, duration]`` with edges on the ramp joins."""
    panels = max(4, math.ceil(_S_PANELS_PER_PERIOD * w.duration / w.period))
    edges = set(np.linspace(0.0, w.duration, panels + 1).tolist())
    edges.update((w.ramp_time, w.duration - w.ramp_time))
    return _panel_nodes(sorted(edges), _S_NODES_PER_PANEL)


def _outer_sum(w, s, sw, tau, offset, kernel, integrand, swap):
    """``sum_i sw_i sum_j kernel_j g(f(t1), f(t2))`` with both times in the window.

    t2 = s_i and t1 = s_i + tau_j (roles exchanged when ``swap``). The
    shifted sinusoid is formed by angle addition so that rounding of
    ``s + tau`` at large s does not leak into the ridge sums.
    """
    d = w.mean_distance
    phase = w.omega * 2.0 * d
    local = w.omega * offset
    sin_tau = np.sign(tau) * (math.sin(phase) * np.cos(local) + math.cos(phase) * np.sin(local))
    cos_tau = math.cos(phase) * np.cos(local) - math.sin(phase) * np.sin(local)
    ramp = w.ramp_time
    f_s = window_values(w, s)
    sin_s, cos_s = np.sin(w.omega * s), np.cos(w.omega * s)
    rows = np.empty(s.shape)
    for start in range(0, s.size, _ROW_CHUNK):
        sl = slice(start, start + _ROW_CHUNK)
        shifted = s[sl, None] + tau[None, :]
        inside = (shifted >= 0.0) & (shifted <= w.duration)
        env = np.minimum(_envelope(shifted / ramp), _envelope((w.duration - shifted) / ramp))
        f_shift = np.where(inside, env * (sin_s[sl, None] * cos_tau + cos_s[sl, None] * sin_tau), 0.0)
        f_here = np.broadcast_to(f_s[sl, None], shifted.shape)
        f1, f2 = (f_here, f_shift) if swap else (f_shift, f_here)
        vals = np.where(inside, integrand(f1, f2), 0.0)
        rows[sl] = vals @ kernel if kernel is not None else vals.sum(axis=1)
    return math.fsum(sw * rows)


def variance_double_integral(axis, w: TrajectoryWindow, mesh: MeshSpec,
                             order: ExpansionOrder = ExpansionOrder.FULL,
                             swap: bool = False) -> float:
    """Double time integral of the regulated boundary correlation.

    Parameters
    ----------
    axis : Axis or str
    w : TrajectoryWindow
    mesh : MeshSpec
    order : ExpansionOrder
        ``FULL`` integrates the exact correlation; the other members keep
        one term of the second-order expansion in the amplitude.
    swap : bool
        Exchange the roles of t1 and t2 (used to check symmetry).

    Returns
    -------
    float
        The integral per unit ``q^2/m^2``.
    """
    axis = Axis.parse(axis)
    order = ExpansionOrder(order)
    d = w.mean_distance
    if mesh.epsilon >= d / 20.0:
        raise DomainError(f"epsilon must stay below d/20, got {mesh.epsilon}")
    # the whole lag range is kept: the non-oscillating part of the
    # tau**-6 tail would otherwise leave a small spurious slope
    tau, tw, offset = _tau_nodes(w, mesh, w.duration)
    amp = w.amplitude
    c0, c1, c2 = _local_coefficients(axis, offset, mesh.epsilon, d)

    # the s integral of 1 is the length of the overlap interval
    static = math.fsum(tw * c0 * (w.duration - np.abs(tau)))
    if order is ExpansionOrder.STATIC:
        return static

    s, sw = _s_nodes(w)
    if order is ExpansionOrder.FULL:
        eps = mesh.epsilon
        far = np.abs(tau) + 2.0 * d - 1j * eps
        close = offset - 1j * eps
        tau2 = (np.abs(tau) - 1j * eps) ** 2

        def full(f1, f2):
            shift = amp * (f1 + f2)
            # tau^2 - Z^2 = (|tau| - Z)(|tau| + Z) with |tau| - Z = offset - shift
            q = (close - shift) * (far + shift)
            z2 = (2.0 * d + shift) ** 2
            if axis is Axis.LONGITUDINAL:
                corr = 1.0 / q**2
            else:
                corr = -(tau2 + z2) / q**3
            # the static part is removed so the integrand vanishes with f
            return (corr.real / math.pi**2 - c0) * tw

        return static + _outer_sum(w, s, sw, tau, offset, None, full, swap)

    if order is ExpansionOrder.LINEAR_IN_A:
        kernel = tw * c1 * amp

        def term(f1, f2):
            return f1 + f2
    elif order is ExpansionOrder.QUADRATIC_SQUARE:
        kernel = tw * c2 * amp * amp

        def term(f1, f2):
            return f1 * f1 + f2 * f2
    else:
        kernel = 2.0 * tw * c2 * amp * amp

        def term(f1, f2):
            return f1 * f2

    return _outer_sum(w, s, sw, tau, offset, kernel, term, swap)


def whole_periods(omega: float, duration: float) -> float:
    """Round a duration to the nearest whole number of drive periods."""
    period = 2.0 * math.pi / omega
    return max(1, round(duration / period)) * period


@dataclass(frozen=True)
class GrowthFit:
    """Slope fit of the cross-term variance at one regulator value."""

    epsilon: float
    durations: tuple
    values: tuple
    slope: float
    rate: float
    max_residual_rate: float


def fit_growth(axis, xi: float, durations, epsilon: float,
               amplitude: float = ORACLE_AMPLITUDE, ramp_cycles: int = 3,
               points_per_pole_width: int = 16,
               order: ExpansionOrder = ExpansionOrder.QUADRATIC_CROSS) -> GrowthFit:
    """Least-squares slope of the variance against duration at d = 1."""
    omega = xi
    mesh = MeshSpec(epsilon, points_per_pole_width)
    ts, vs = [], []
    for t in durations:
        window = TrajectoryWindow(omega, t, amplitude, 1.0, ramp_cycles)
        ts.append(t)
        vs.append(variance_double_integral(axis, window, mesh, order))
    ts_arr, vs_arr = np.array(ts), np.array(vs)
    slope, intercept = np.polyfit(ts_arr, vs_arr, 1)
    to_rate = 16.0 * math.pi / (amplitude**2 * omega**4)
    resid = vs_arr - (slope * ts_arr + intercept)
    span = ts_arr.max() - ts_arr.min()
    return GrowthFit(epsilon, tuple(ts), tuple(vs), float(slope), float(slope * to_rate),
                     float(np.max(np.abs(resid)) * to_rate / span))


def growth_rate(axis, p, durations=DEFAULT_DURATIONS, ladder=EPSILON_LADDER,
                amplitude: float = ORACLE_AMPLITUDE, ramp_cycles: int = 3,
                points_per_pole_width: int = 16, full_output: bool = False):
    """Estimate R_axis(xi) from the slope of the brute-force variance.

    Durations are rounded to whole drive periods, so the bounded
    oscillatory part of the variance repeats and drops out of the slope.
    The slope is converted with ``16 pi m^4 d / (q^4 E0^2)`` and
    ``A = q E0 / (m omega^2)``, then extrapolated to zero regulator.
    """
    xi = as_xi(p)
    axis = Axis.parse(axis)
    durations = [float(t) for t in durations]
    if len(durations) < 3:
        raise DomainError("need at least three durations")
    if min(durations) < 100.0:
        raise DomainError("durations must all be at least 100 d")
    rounded = sorted({whole_periods(xi, t) for t in durations})
    if len(rounded) < 3:
        raise DomainError("durations collapse after rounding to whole periods")
    fits = [fit_growth(axis, xi, rounded, eps, amplitude, ramp_cycles, points_per_pole_width)
            for eps in ladder]
    floor = RATE_NOISE_FLOOR * max(1.0, (_NOISE_PIVOT / xi) ** 4)
    extrap = extrapolate_epsilon([(f.epsilon, f.rate) for f in fits], atol=floor)
    for f in fits:
        scale = max(abs(f.rate), abs(extrap.limit), 0.02)
        if f.max_residual_rate > 0.05 * scale:
            raise NonlinearityError(
                f"fit residual {f.max_residual_rate:.3g} exceeds 5% of slope scale {scale:.3g}"
            )
    if full_output:
        return extrap.limit, extrap, fits
    return extrap.limit


def order_ladder(axis, w_kwargs: dict, order: ExpansionOrder, ladder=EPSILON_LADDER,
                 points_per_pole_width: int = 16, atol: float = 0.0) -> Extrapolation:
    """Extrapolate one expansion term of the variance to zero regulator."""
    window = TrajectoryWindow(**w_kwargs)
    samples = [(eps, variance_double_integral(axis, window, MeshSpec(eps, points_per_pole_width), order))
               for eps in ladder]
    return extrapolate_epsilon(samples, atol=atol)
