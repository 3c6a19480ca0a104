"""The brute-force verifiers themselves, checked against primitive math."""
import math

import numpy as np
import pytest

from maxrange import oracle
from maxrange.errors import DomainError
from maxrange.segments import level_plan
from maxrange.strategies import FixedR

R0 = 3.0207614933986426  # sqrt(3 * 0.073 / 0.024)


def test_golden_section_quadratic():
    # value comparisons cannot resolve a smooth minimum below sqrt(eps)
    x = oracle.golden_section(lambda t: (t - 2.0) ** 2 + 1.0, 0.0, 5.0, tol=1e-10)
    assert abs(x - 2.0) < 5e-8


def test_brute_min_r_level(polar):
    assert oracle.brute_min_r(polar, 0.0) == pytest.approx(R0, abs=1e-7)


def test_brute_min_r_climb(polar):
    # frozen from this oracle; cross-checked by the closed form elsewhere
    assert oracle.brute_min_r(polar, math.radians(5.0)) == pytest.approx(
        5.330373208846184, abs=1e-6)


def test_brute_min_r_glide_matches_max_lift_drag(polar):
    glide = math.atan(-2.0 * math.sqrt(polar.k * polar.cd0))
    r = oracle.brute_min_r(polar, glide)
    assert r == pytest.approx(oracle.brute_min_r_ld(polar, glide), abs=1e-6)


def test_brute_min_r_boundary_rejected(polar):
    with pytest.raises(DomainError, match="boundary"):
        oracle.brute_min_r(polar, 0.0, r_lo=5.0, r_hi=50.0)


def test_brute_min_r_ld_values(polar):
    assert oracle.brute_min_r_ld(polar, 0.0) == pytest.approx(
        1.7440374613713625, abs=1e-7)
    assert oracle.brute_min_r_ld(polar, math.radians(60.0)) == pytest.approx(
        0.87201873, abs=1e-6)


def test_brute_min_r_ld_matches_closed_form_on_grid(polar):
    for gamma in np.radians(np.linspace(-10.0, 60.0, 50)):
        expected = math.sqrt(polar.k / polar.cd0) * math.cos(gamma)
        assert oracle.brute_min_r_ld(polar, float(gamma)) == pytest.approx(
            expected, abs=1e-7)


def test_brute_fuel_level_matches_closed_form(model):
    h0, w0 = 9042.0, 60000.0
    xs = np.arange(0.0, 100e3 + 1.0, 40.0)
    hs = np.full_like(xs, h0)
    fuel = oracle.brute_fuel(model, xs, hs, w0, FixedR(R0))
    c_h = model.propulsion.sfc(h0)
    rho = model.atmosphere.density(h0)
    beta = (c_h / 2.0) * math.sqrt(rho * model.wing_area / (2.0 * R0)) * (
        model.polar.cd0 * R0 + model.polar.k / R0)
    expected = w0 - (math.sqrt(w0) - beta * xs[-1]) ** 2
    assert fuel == pytest.approx(expected, rel=1e-6)


def test_brute_fuel_quadrature_converges(model):
    plan = level_plan(6000.0)
    xs1 = np.arange(0.0, 50e3 + 1.0, 50.0)
    xs2 = np.arange(0.0, 50e3 + 1.0, 25.0)
    f1 = oracle.brute_fuel(model, xs1, [plan.h(x) for x in xs1], 60000.0, FixedR(R0))
    f2 = oracle.brute_fuel(model, xs2, [plan.h(x) for x in xs2], 60000.0, FixedR(R0))
    assert abs(f1 - f2) / f2 < 1e-7


def test_brute_fuel_rejects_coarse_sampling(model):
    xs = np.arange(0.0, 10e3, 200.0)
    with pytest.raises(DomainError, match="coarse"):
        oracle.brute_fuel(model, xs, np.full_like(xs, 5000.0), 60000.0, FixedR(R0))


def test_finite_difference_check_sin():
    grid = np.linspace(0.0, 1.0, 21)
    rep = oracle.finite_difference_check(math.sin, math.cos, grid)
    assert rep.max_rel_deviation < 1e-9


def test_finite_difference_check_detects_wrong_derivative():
    grid = np.linspace(0.0, 1.0, 21)
    rep = oracle.finite_difference_check(math.sin, lambda x: 2.0 * math.cos(x), grid)
    assert rep.max_rel_deviation > 0.4
