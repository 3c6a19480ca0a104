import math

import numpy as np
import pytest

from maxrange.atmosphere import AtmosphereModel
from maxrange.errors import DomainError
from maxrange.propulsion import PropulsionModel


def make_prop(**overrides):
    base = dict(t_max_sl=18000.0, idle_fraction=0.05, thrust_exponent=1.0,
                c_sl=2.2e-4, sfc_exponent=0.0, power_setting=1.0,
                atmosphere=AtmosphereModel())
    base.update(overrides)
    return PropulsionModel(**base)


def test_sea_level_max_thrust():
    assert make_prop().max_thrust(0.0) == 18000.0


def test_e_folding_with_unit_exponent():
    p = make_prop()
    assert p.max_thrust(9042.0) == pytest.approx(18000.0 / math.e, rel=1e-12)


def test_power_setting_scales_linearly():
    full = make_prop(power_setting=1.0)
    derated = make_prop(power_setting=0.98)
    for h in (0.0, 4000.0, 11000.0):
        assert derated.max_thrust(h) / full.max_thrust(h) == pytest.approx(0.98)


def test_idle_thrust_fraction_and_independence_from_power_setting():
    p1 = make_prop(power_setting=0.9)
    p2 = make_prop(power_setting=1.0)
    assert p1.idle_thrust(0.0) == pytest.approx(0.05 * 18000.0)
    for h in (0.0, 6000.0):
        assert p1.idle_thrust(h) == p2.idle_thrust(h)


def test_idle_below_max_everywhere():
    p = make_prop(power_setting=0.98)
    for h in np.linspace(0.0, 14000.0, 20):
        assert p.idle_thrust(h) < p.max_thrust(h)


def test_idle_to_max_ratio_constant_in_altitude():
    p = make_prop(power_setting=0.98)
    ratios = [p.idle_thrust(h) / p.max_thrust(h) for h in (0.0, 5000.0, 12000.0)]
    assert max(ratios) - min(ratios) < 1e-15


def test_max_thrust_monotone_decreasing():
    p = make_prop(thrust_exponent=1.5)
    hs = np.linspace(0.0, 14000.0, 50)
    ts = [p.max_thrust(h) for h in hs]
    assert all(b < a for a, b in zip(ts, ts[1:]))


def test_sfc_sea_level_and_constant_case():
    p = make_prop(sfc_exponent=0.0)
    assert p.sfc(0.0) == 2.2e-4
    assert p.sfc(11000.0) == 2.2e-4


def test_sfc_power_law():
    p = make_prop(sfc_exponent=0.5)
    assert p.sfc(9042.0) == pytest.approx(2.2e-4 * math.exp(-0.5), rel=1e-12)


def test_design_parameter_altitude_independent_for_matched_exponents():
    for x_c in (0.0, 0.25, 0.5):
        p = make_prop(thrust_exponent=2.0 * x_c + 1.0, sfc_exponent=x_c)
        values = [p.design_parameter(h) for h in np.linspace(0.0, 14000.0, 40)]
        spread = (max(values) - min(values)) / abs(values[0])
        assert spread < 1e-10
        assert p.design_parameter_is_constant()


def test_design_parameter_varies_for_mismatched_exponents():
    p = make_prop(thrust_exponent=1.0, sfc_exponent=0.5)
    assert not p.design_parameter_is_constant()


def test_design_parameter_inverse_in_sfc():
    p1 = make_prop()
    p2 = make_prop(c_sl=4.4e-4)
    assert p1.design_parameter(0.0) / p2.design_parameter(0.0) == pytest.approx(
        2.0, rel=1e-12)


def test_validation():
    with pytest.raises(DomainError):
        make_prop(t_max_sl=0.0)
    with pytest.raises(DomainError):
        make_prop(idle_fraction=1.0)
    with pytest.raises(DomainError):
        make_prop(power_setting=1.5)
    with pytest.raises(DomainError):
        make_prop(idle_fraction=0.5, power_setting=0.4)
