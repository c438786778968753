import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from vacuum_mirror.core import Axis
from vacuum_mirror.errors import DivisionError, DomainError
from vacuum_mirror.radiation import (
    SERIES_SWITCH,
    DipoleConfig,
    Moment,
    ShotReport,
    angular_integral_oracle,
    angular_power,
    combined_curve,
    energy_per_cycle,
    fluctuation_to_shot_ratio,
    projected_power,
    s_longitudinal,
    s_total,
    s_transverse,
    shape_factor,
    shot_report,
    shot_variance_rate,
    total_power,
)
from vacuum_mirror.rates import rate_longitudinal, rate_transverse

# closed forms evaluated at 40 digits (mpmath)
SHAPE_REFERENCE = {
    0.05: (1.9990003570767271, 0.19983340276389054, 0.099958346351996754),
    0.5: (1.9035060368192704, 1.8401405292797516, 0.95961393972760192),
    1.0: (1.6530966624699874, 2.8719313975012326, 1.7056680572312754),
    2.0: (1.0870830619443681, 2.551967140941477, 2.3641281458520728),
    5.0: (1.0235400825396255, 10.096554439949878, 5.1018521254740482),
    10.0: (0.99728173900542242, 19.689768136503741, 9.9679317296154004),
    25.0: (0.99883574376932057, 49.763079910323175, 24.995222975936459),
}
ORACLE_GRID = (0.5, 1.0, 2.0, math.pi, 5.0, 10.0)


@pytest.mark.parametrize("xi,expected", SHAPE_REFERENCE.items())
def test_shape_factors_against_reference(xi, expected):
    st_, sz, sx = expected
    assert s_total(xi) == pytest.approx(st_, rel=1e-12)
    assert s_longitudinal(xi) == pytest.approx(sz, rel=1e-12)
    assert s_transverse(xi) == pytest.approx(sx, rel=1e-10)


def test_total_examples():
    assert s_total(math.pi / 2) == pytest.approx(1 + 3 / math.pi**2, rel=1e-14)
    assert s_total(math.pi / 2) == pytest.approx(1.30396, abs=1e-5)
    assert s_total(1e-4) == pytest.approx(2.0 - 2 * 1e-8 / 5, rel=1e-14)
    assert s_total(50.0) == pytest.approx(1.0, abs=0.01)


def test_longitudinal_examples():
    assert s_longitudinal(math.pi) == pytest.approx(2 * math.pi - 6 / math.pi, rel=1e-13)
    assert round(s_longitudinal(math.pi), 3) == 4.373
    assert s_longitudinal(0.01) == pytest.approx(0.04, rel=1e-4)
    assert s_longitudinal(0.01) == pytest.approx(0.04 - 4 * 0.01**3 / 3, rel=1e-9)
    assert s_longitudinal(20.0) == pytest.approx(40.0, rel=0.05)


def test_transverse_examples():
    assert s_transverse(1.0) == pytest.approx(1.70567, abs=1e-5)
    assert s_transverse(1e-3) == pytest.approx(2e-3, rel=1e-6)
    assert s_transverse(30.0) == pytest.approx(30.0, rel=0.03)


@pytest.mark.parametrize("f", [s_total, s_longitudinal])
def test_series_switch_continuity(f):
    below = math.nextafter(SERIES_SWITCH, 0.0)
    assert f(below) == pytest.approx(f(SERIES_SWITCH), rel=1e-12)


@pytest.mark.parametrize("f", [s_total, s_longitudinal, s_transverse])
@pytest.mark.parametrize("bad", [0.0, -0.5, math.nan])
def test_shape_domain(f, bad):
    with pytest.raises(DomainError):
        f(bad)


@pytest.mark.parametrize("xi", ORACLE_GRID)
def test_closed_forms_match_angular_quadrature(xi):
    assert angular_integral_oracle(Moment.TOTAL, xi) == pytest.approx(s_total(xi), rel=1e-8)
    assert angular_integral_oracle(Moment.Z_PROJECTED, xi) == pytest.approx(s_longitudinal(xi), rel=1e-8)
    assert angular_integral_oracle("x", xi) == pytest.approx(s_transverse(xi), rel=1e-8)


def test_oracle_examples():
    assert angular_integral_oracle("total", 3.0) == pytest.approx(s_total(3.0), rel=1e-8)
    assert angular_integral_oracle("z", math.pi) == pytest.approx(2 * math.pi - 6 / math.pi, rel=1e-8)
    assert angular_integral_oracle("x", 1.0) == pytest.approx(1.70567, abs=1e-5)


CFG = DipoleConfig(p_e=0.3, omega=2.0, d=0.75)


def test_angular_power_examples():
    prefactor = CFG.p_e**2 * CFG.omega**4 / (8 * math.pi**2)
    assert angular_power(0.0, CFG) == 0.0
    assert angular_power(math.pi / 2, CFG) == pytest.approx(prefactor, rel=1e-14)
    cfg = DipoleConfig(p_e=0.3, omega=2.0, d=math.pi / 4)
    assert angular_power(math.pi / 3, cfg) == pytest.approx(prefactor * 3 / 8, rel=1e-14)


@pytest.mark.parametrize("theta", [-0.1, math.pi / 2 + 1e-9, math.nan])
def test_angular_power_domain(theta):
    with pytest.raises(DomainError):
        angular_power(theta, CFG)


@given(st.floats(0.0, math.pi / 2), st.floats(0.01, 30.0))
def test_angular_power_nonnegative(theta, xi):
    assert angular_power(theta, DipoleConfig(1.0, 1.0, xi)) >= 0.0


@pytest.mark.parametrize("d", [0.05, 1.5, 5.0])
def test_total_power_is_hemisphere_integral(d):
    cfg = DipoleConfig(0.3, 2.0, d)
    x, w = np.polynomial.legendre.leggauss(64)
    theta = 0.25 * math.pi * (x + 1.0)
    dens = np.array([angular_power(t, cfg) for t in theta])
    integral = 2 * math.pi * 0.25 * math.pi * float(np.dot(w, dens * np.sin(theta)))
    assert total_power(cfg) == pytest.approx(integral, rel=1e-8)


def test_total_power_limits():
    free = CFG.p_e**2 * CFG.omega**4 / (12 * math.pi)
    assert total_power(DipoleConfig(0.3, 2.0, 1e-5)) == pytest.approx(2 * free, rel=1e-8)
    assert total_power(DipoleConfig(0.3, 2.0, 500.0)) == pytest.approx(free, rel=1e-5)


@pytest.mark.parametrize("d", [1.0, math.pi / 4, 40.0])
def test_energy_per_cycle_identity(d):
    cfg = DipoleConfig(0.3, 2.0, d)
    assert energy_per_cycle(cfg) * cfg.omega / (2 * math.pi * total_power(cfg)) == pytest.approx(1.0, rel=1e-14)


def test_energy_per_cycle_example():
    cfg = DipoleConfig(0.3, 2.0, math.pi / 4)
    assert energy_per_cycle(cfg) == pytest.approx(0.09 * 8 * (1 + 3 / math.pi**2) / 6, rel=1e-13)


@pytest.mark.parametrize("kwargs", [dict(p_e=0.0, omega=1.0, d=1.0), dict(p_e=1.0, omega=-1.0, d=1.0),
                                    dict(p_e=1.0, omega=1.0, d=math.inf)])
def test_config_validation(kwargs):
    with pytest.raises(DomainError):
        DipoleConfig(**kwargs)


@pytest.mark.parametrize("xi", [0.05, 0.5, 1.0, 2.0, math.pi, 10.0, 30.0])
def test_projected_powers_below_total(xi):
    cfg = DipoleConfig(1.0, 1.0, xi)
    for axis in ("z", "x"):
        assert 0.0 < projected_power(axis, cfg) <= total_power(cfg)


def test_shape_factors_nonnegative():
    for xi in np.linspace(0.01, 40.0, 800):
        assert s_total(xi) >= 0.0
        assert s_longitudinal(xi) >= 0.0
        assert s_transverse(xi) >= 0.0


def test_shot_rate_examples():
    assert shot_variance_rate("z", 1.0, 1.0, 1.0, 1.0, math.pi) == pytest.approx(
        (2 * math.pi - 6 / math.pi) / (64 * math.pi), rel=1e-13)
    assert shot_variance_rate("z", 1.0, 1.0, 1.0, 1.0, math.pi) == pytest.approx(0.02175, abs=1e-5)
    assert shot_variance_rate("x", 1.0, 1.0, 1.0, 1.0, 1.0) == pytest.approx(0.039977, abs=1e-6)


@pytest.mark.parametrize("axis", ["z", "x"])
def test_shot_rate_scaling(axis):
    base = shot_variance_rate(axis, 0.3, 2.0, 1.7, 0.9, 2.0)
    assert shot_variance_rate(axis, 0.3, 4.0, 1.7, 0.9, 2.0) == pytest.approx(4 * base, rel=1e-14)
    assert shot_variance_rate(axis, 0.6, 2.0, 1.7, 0.9, 2.0) == pytest.approx(16 * base, rel=1e-14)
    assert shot_variance_rate(axis, 0.3, 2.0, 1.7, 1.8, 2.0) == pytest.approx(base / 2, rel=1e-14)


def test_shot_rate_domain():
    with pytest.raises(DomainError):
        shot_variance_rate("z", 1.0, 0.0, 1.0, 1.0, 1.0)
    with pytest.raises(DomainError):
        shot_variance_rate("x", 1.0, 1.0, -1.0, 1.0, 1.0)


def test_ratio_low_frequency():
    assert fluctuation_to_shot_ratio("z", 1e-4) == pytest.approx(-4 / 15, rel=1e-6)
    assert fluctuation_to_shot_ratio("x", 1e-4) == pytest.approx(64 / (90 * math.pi), rel=1e-6)
    assert fluctuation_to_shot_ratio("x", 1e-4) == pytest.approx(0.22635, abs=1e-5)


@pytest.mark.parametrize("xi", [25.0, 30.0])
def test_ratio_high_frequency_longitudinal(xi):
    assert abs(math.cos(2 * xi)) > 0.3
    assert fluctuation_to_shot_ratio("z", xi) == pytest.approx(2 * math.cos(2 * xi) / xi**2, rel=0.1)


@pytest.mark.parametrize("xi", [25.0, 27.0, 30.0, 33.0])
def test_ratio_high_frequency_transverse(xi):
    # R_x = sin(2 xi) + O(cos(2 xi) / xi); near |sin 2 xi| = 0.3 (xi = 30) the
    # correction is 15% of the leading term, so compare with its bound instead
    lead = 8 / (3 * math.pi * xi)
    ratio = fluctuation_to_shot_ratio("x", xi)
    assert abs(ratio - lead * math.sin(2 * xi)) <= lead * 3 / xi
    if abs(math.sin(2 * xi)) > 0.6:
        assert ratio == pytest.approx(lead * math.sin(2 * xi), rel=0.1)


def test_ratio_high_frequency_transverse_edge():
    ratio = fluctuation_to_shot_ratio("x", 30.0)
    assert abs(ratio / (8 * math.sin(60.0) / (90 * math.pi)) - 1.0) == pytest.approx(0.154, abs=0.005)


def test_ratio_consistency():
    for xi in (0.3, 1.0, 2.5, 7.0):
        assert fluctuation_to_shot_ratio("z", xi) == pytest.approx(4 * rate_longitudinal(xi) / s_longitudinal(xi))
        assert combined_curve("x", xi) / s_transverse(xi) - 1 == pytest.approx(
            fluctuation_to_shot_ratio("x", xi), rel=1e-12, abs=1e-15)


def test_ratio_division_error():
    with pytest.raises(DivisionError):
        fluctuation_to_shot_ratio("z", 1e-16)


def test_combined_examples():
    assert combined_curve("z", 1e-4) == pytest.approx(44e-4 / 15, rel=1e-6)
    assert combined_curve("x", 1.0) == s_transverse(1.0)
    assert combined_curve("x", 2.0) == pytest.approx(s_transverse(2.0) + 8 * rate_transverse(2.0) / (3 * math.pi))


@pytest.mark.parametrize("axis", ["z", "x"])
def test_combined_positive_on_grid(axis):
    grid = np.round(np.arange(1, 401) * 0.05, 2)
    assert min(combined_curve(axis, x) for x in grid) > 0.0


def test_shot_report():
    rep = shot_report("z", 1.0, 1.0, 1.0, 1.0, math.pi)
    assert rep.axis is Axis.LONGITUDINAL
    assert rep.s_value == shape_factor("z", math.pi)
    assert rep.shot_rate == shot_variance_rate("z", 1.0, 1.0, 1.0, 1.0, math.pi)
    assert rep.combined == pytest.approx(rep.s_value * (1 + rep.ratio_fluct_to_shot), rel=1e-12)
    with pytest.raises(DomainError):
        ShotReport(Axis.TRANSVERSE, -1.0, 0.0, 0.0, 0.0)
