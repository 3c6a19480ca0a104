"""Closed-form flight algebra against frozen oracle values and identities."""
import math

import numpy as np
import pytest

from maxrange import aero
from maxrange.aero import DragPolar
from maxrange.errors import DomainError, InfeasibleError

R0 = 3.0207614933986426
R_LD = 1.7440374613713625
TW_LEVEL = 0.09666436778875657
MIN_TW_LEVEL = 0.0837137981458254
GLIDE_RAD = -0.08351906089109047  # -4.78529 deg
S_WING = 21.6


# ---- characteristic pressure ratios ----

def test_r_ld_level(polar):
    assert polar.r_ld(0.0) == pytest.approx(R_LD, rel=1e-12)


def test_r_ld_cosine_scaling(polar):
    assert polar.r_ld(math.radians(60.0)) == pytest.approx(R_LD / 2.0, rel=1e-12)
    assert polar.r_ld(math.radians(5.0)) == pytest.approx(
        R_LD * math.cos(math.radians(5.0)), rel=1e-12)


def test_r_zero_value_and_ratio(polar):
    assert polar.r_zero() == pytest.approx(R0, rel=1e-12)
    assert polar.r_zero() / polar.r_ld(0.0) == pytest.approx(math.sqrt(3.0),
                                                             rel=1e-12)


def test_level_speed_exceeds_max_lift_drag_speed_by_quartic_root_of_three(model):
    v0 = model.speed(model.polar.r_zero(), 5000.0, 60000.0)
    v_ld = model.speed(model.polar.r_ld(0.0), 5000.0, 60000.0)
    assert v0 / v_ld == pytest.approx(3.0 ** 0.25, rel=1e-12)


def test_r_gamma_reduces_to_level_optimum(polar):
    assert polar.r_gamma(0.0) == pytest.approx(R0, rel=1e-12)


def test_r_gamma_climb_value(polar):
    assert polar.r_gamma(math.radians(5.0)) == pytest.approx(
        5.330373208846184, rel=1e-10)


def test_r_gamma_meets_max_lift_drag_at_zero_thrust(polar):
    gamma0 = polar.gamma_from_thrust(0.0)
    assert polar.r_gamma(gamma0) == pytest.approx(polar.r_ld(gamma0), rel=1e-10)
    assert polar.r_gamma(gamma0) == pytest.approx(1.7379582876488542, rel=1e-9)


# ---- thrust relations ----

def test_thrust_ratio_at_level_optimum(polar):
    assert polar.thrust_ratio(R0, 0.0) == pytest.approx(TW_LEVEL, rel=1e-12)
    assert polar.thrust_ratio(3.0208, 0.0) == pytest.approx(0.09666498, abs=1e-7)


def test_thrust_ratio_minimum_at_max_lift_drag(polar):
    assert polar.thrust_ratio(polar.r_ld(0.0), 0.0) == pytest.approx(
        MIN_TW_LEVEL, rel=1e-12)


def test_thrust_ratio_climb(polar):
    assert polar.thrust_ratio(5.330373208846184, math.radians(5.0)) == \
        pytest.approx(0.22867577118151666, rel=1e-10)


def test_min_thrust_ratio_level(polar):
    assert polar.min_thrust_ratio(0.0) == pytest.approx(MIN_TW_LEVEL, rel=1e-12)


def test_min_thrust_ratio_zero_at_glide(polar):
    assert polar.min_thrust_ratio(GLIDE_RAD) == pytest.approx(0.0, abs=1e-12)


def test_thrust_ratio_bounded_below(polar):
    rng = np.random.default_rng(7)
    for _ in range(300):
        r = float(rng.uniform(0.2, 20.0))
        gamma = float(rng.uniform(-0.5, 0.5))
        assert polar.thrust_ratio(r, gamma) >= polar.min_thrust_ratio(gamma) - 1e-12


def test_tau_level_and_glide(polar):
    assert polar.tau(0.0) == pytest.approx(TW_LEVEL, rel=1e-12)
    assert polar.tau(polar.gamma_from_thrust(0.0)) == pytest.approx(0.0, abs=1e-12)
    assert polar.tau(math.radians(5.0)) == pytest.approx(0.22867577118151666,
                                                         rel=1e-10)


def test_tau_strictly_increasing(polar):
    gammas = np.radians(np.linspace(-4.785, 15.0, 200))
    taus = [polar.tau(float(g)) for g in gammas]
    assert all(b > a for a, b in zip(taus, taus[1:]))


# ---- inversions ----

def test_gamma_from_thrust_level(polar):
    assert polar.gamma_from_thrust(TW_LEVEL) == pytest.approx(0.0, abs=1e-12)


def test_gamma_from_thrust_engine_out(polar):
    gamma0 = polar.gamma_from_thrust(0.0)
    assert math.degrees(gamma0) == pytest.approx(-4.7852896979556165, abs=1e-9)
    # identical to the best-glide slope
    assert gamma0 == pytest.approx(
        math.atan(-2.0 * math.sqrt(polar.k * polar.cd0)), rel=1e-12)


def test_gamma_from_thrust_round_trip(polar):
    for t in np.linspace(0.0, 1.0, 101):
        assert polar.tau(polar.gamma_from_thrust(float(t))) == pytest.approx(
            float(t), abs=1e-10)


def test_gamma_from_thrust_domain(polar):
    with pytest.raises(DomainError):
        polar.gamma_from_thrust(-0.01)
    with pytest.raises(DomainError):
        polar.gamma_from_thrust(1.01)


def test_gamma_from_r_round_trip(polar):
    assert polar.gamma_from_r(R0) == pytest.approx(0.0, abs=1e-12)
    for r in np.linspace(1.8, 12.0, 101):
        assert polar.r_gamma(polar.gamma_from_r(float(r))) == pytest.approx(
            float(r), abs=1e-10)
    assert math.degrees(polar.gamma_from_r(5.330373208846184)) == pytest.approx(
        5.0, abs=1e-9)
    assert math.degrees(polar.gamma_from_r(1.7379582876488542)) == pytest.approx(
        -4.7852896979556165, abs=1e-8)


def test_gamma_fixed_r_thrust(polar):
    assert polar.gamma_fixed_r_thrust(R0, TW_LEVEL) == pytest.approx(0.0, abs=1e-12)
    gamma = polar.gamma_fixed_r_thrust(3.0208, 0.15)
    assert math.degrees(gamma) == pytest.approx(3.061276461957539, abs=1e-9)
    assert polar.thrust_ratio(3.0208, gamma) == pytest.approx(0.15, abs=1e-12)


def test_gamma_fixed_r_thrust_random_round_trips(polar):
    rng = np.random.default_rng(11)
    for _ in range(100):
        r = float(rng.uniform(1.0, 10.0))
        gamma = float(rng.uniform(math.radians(-10.0), math.radians(15.0)))
        t = polar.thrust_ratio(r, gamma)
        back = polar.gamma_fixed_r_thrust(r, t)
        assert polar.thrust_ratio(r, back) == pytest.approx(t, abs=1e-10)
        assert back == pytest.approx(gamma, abs=1e-9)


def test_gamma_fixed_r_thrust_infeasible(polar):
    # more thrust than any quasi-steady angle can absorb at this speed
    with pytest.raises(InfeasibleError):
        polar.gamma_fixed_r_thrust(0.5, 3.0)


# ---- state assembly and conversions ----

def test_state_from_r_level(polar):
    st = polar.state_from_r(3.0208, 0.0)
    assert st.cl == pytest.approx(0.3310381355932204, rel=1e-12)
    assert st.drag_over_w == pytest.approx(0.09666498389830508, rel=1e-12)
    assert st.lift_over_w == 1.0


def test_state_invariants(polar):
    rng = np.random.default_rng(3)
    for _ in range(100):
        r = float(rng.uniform(0.8, 8.0))
        gamma = float(rng.uniform(-0.3, 0.3))
        st = polar.state_from_r(r, gamma)
        assert st.cl * st.r == pytest.approx(math.cos(st.gamma), abs=1e-12)
        assert st.cd == pytest.approx(polar.cd0 + polar.k * st.cl**2, abs=1e-12)
        assert st.lift_over_w == pytest.approx(math.cos(gamma), rel=1e-12)


def test_unit_lift_coefficient(polar):
    assert polar.state_from_r(1.0, 0.0).cl == 1.0


def test_pressure_ratio_speed_round_trip(atmosphere):
    v = aero.speed_from_r(3.0208, 3048.0, 60000.0, S_WING, atmosphere)
    assert v == pytest.approx(138.533761561546, rel=1e-10)
    r = aero.pressure_ratio(v, 3048.0, 60000.0, S_WING, atmosphere)
    assert r == pytest.approx(3.0208, rel=1e-12)


def test_pressure_ratio_scaling(atmosphere):
    r1 = aero.pressure_ratio(100.0, 2000.0, 60000.0, S_WING, atmosphere)
    r2 = aero.pressure_ratio(200.0, 2000.0, 60000.0, S_WING, atmosphere)
    assert r2 == pytest.approx(4.0 * r1, rel=1e-12)
    assert aero.pressure_ratio(0.0, 0.0, 60000.0, S_WING, atmosphere) == 0.0


def test_pressure_ratio_rejects_bad_inputs(atmosphere):
    with pytest.raises(DomainError):
        aero.pressure_ratio(100.0, 0.0, -5.0, S_WING, atmosphere)
    with pytest.raises(DomainError):
        aero.speed_from_r(0.0, 0.0, 60000.0, S_WING, atmosphere)


def test_stall_speed(atmosphere):
    v = aero.stall_speed(73000.0, 0.0, S_WING, 0.8, atmosphere)
    assert v == pytest.approx(66.43952233795666, rel=1e-10)


def test_stall_speed_scales_with_sqrt_weight(atmosphere):
    v1 = aero.stall_speed(40000.0, 0.0, S_WING, 0.8, atmosphere)
    v2 = aero.stall_speed(80000.0, 0.0, S_WING, 0.8, atmosphere)
    assert v2 / v1 == pytest.approx(math.sqrt(2.0), rel=1e-12)


def test_stall_speed_altitude_scaling(atmosphere):
    v0 = aero.stall_speed(73000.0, 0.0, S_WING, 0.8, atmosphere)
    v1 = aero.stall_speed(73000.0, 9042.0, S_WING, 0.8, atmosphere)
    assert v1 / v0 == pytest.approx(math.exp(0.5), rel=1e-12)


def test_drag_polar_validation():
    with pytest.raises(DomainError):
        DragPolar(cd0=-0.01, k=0.073)
    with pytest.raises(DomainError):
        DragPolar(cd0=0.024, k=0.0)
    with pytest.raises(DomainError, match="12"):
        DragPolar(cd0=0.2, k=0.6)
