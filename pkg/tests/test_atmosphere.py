import math

import numpy as np
import pytest

from maxrange.atmosphere import AtmosphereModel
from maxrange.errors import DomainError


def test_sea_level_density(atmosphere):
    assert atmosphere.density(0.0) == pytest.approx(1.225, abs=1e-12)


def test_e_folding_altitude(atmosphere):
    assert atmosphere.density(9042.0) == pytest.approx(1.225 / math.e, rel=1e-12)


def test_density_at_10000_ft(atmosphere):
    assert atmosphere.density(3048.0) == pytest.approx(0.8744565079545501, rel=1e-9)


def test_density_floor_rejected(atmosphere):
    with pytest.raises(DomainError, match="floor"):
        atmosphere.density(-501.0)
    assert atmosphere.density(-499.0) > atmosphere.density(0.0)


def test_density_strictly_decreasing(atmosphere):
    hs = np.linspace(-400.0, 15000.0, 80)
    ds = [atmosphere.density(h) for h in hs]
    assert all(b < a for a, b in zip(ds, ds[1:]))


def test_density_exponential_identity(atmosphere):
    for h in np.linspace(0.0, 15000.0, 31):
        recovered = atmosphere.density(h) * math.exp(h / atmosphere.scale_height)
        assert recovered == pytest.approx(atmosphere.rho_sl, rel=1e-12)


def test_log_derivative_exact():
    assert AtmosphereModel().density_log_derivative() == pytest.approx(
        -1.0 / 9042.0, rel=1e-15)
    assert AtmosphereModel(scale_height=1.0).density_log_derivative() == -1.0
    assert AtmosphereModel(scale_height=2 * 9042.0).density_log_derivative() == \
        pytest.approx(-5.5297500552975e-05, rel=1e-12)


def test_tas_equals_ias_at_sea_level(atmosphere):
    assert atmosphere.kias_to_tas(128.6111, 0.0) == 128.6111


def test_tas_zero_speed(atmosphere):
    assert atmosphere.kias_to_tas(0.0, 5000.0) == 0.0


def test_tas_at_10000_ft(atmosphere):
    # 250 kt indicated reads 295.90 kt true at 10000 ft
    assert atmosphere.kias_to_tas(250.0, 3048.0) == pytest.approx(
        295.8958988963052, rel=1e-9)


def test_tas_rejects_negative_speed(atmosphere):
    with pytest.raises(DomainError):
        atmosphere.kias_to_tas(-1.0, 0.0)


def test_invalid_parameters_rejected():
    with pytest.raises(DomainError):
        AtmosphereModel(rho_sl=0.0)
    with pytest.raises(DomainError):
        AtmosphereModel(scale_height=-1.0)
