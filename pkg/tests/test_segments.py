"""Trajectory-piece integrators: identities, events, and error paths."""
import math

import numpy as np
import pytest

from maxrange import segments as seg
from maxrange.config import AircraftConfig, build_model, default_config
from maxrange.errors import DomainError, InfeasibleError
from maxrange.segments import (
    AtAltitude,
    AtDistance,
    AtLevelFlight,
    FlightState,
    Monitored,
    Phase,
    level_plan,
    linear_plan,
)
from maxrange.strategies import FixedR, MaxLiftDrag, OptimalRange

R0 = 3.0207614933986426
TW_LEVEL = 0.09666436778875657


def custom_model(**propulsion_overrides):
    payload = default_config().model_dump()
    payload["propulsion"].update(propulsion_overrides)
    return build_model(AircraftConfig.model_validate(payload))


def trapezoid_time(segment):
    rate = 1.0 / (segment.v * np.cos(segment.gamma))
    return float(np.trapz(rate, segment.x)) if not hasattr(np, "trapezoid") \
        else float(np.trapezoid(rate, segment.x))


# ---- plan following ----

def test_level_plan_closed_form():
    # turbojet-style constants make the level solution a perfect square
    model = custom_model(c_sl_per_s=2e-4, sfc_exponent=0.0, thrust_exponent=1.0)
    s = seg.integrate_plan(model, level_plan(9042.0), 60000.0, FixedR(R0),
                           (0.0, 100e3))
    assert s.w[-1] == pytest.approx(59400.40582091682, rel=1e-9)
    beta = 1.2269895889656498e-05
    for i in range(0, len(s.x), 250):
        expected = (math.sqrt(60000.0) - beta * s.x[i]) ** 2
        assert s.w[i] == pytest.approx(expected, rel=1e-9)


def test_zero_length_span(model):
    s = seg.integrate_plan(model, level_plan(5000.0), 60000.0, FixedR(R0),
                           (0.0, 0.0))
    assert len(s.x) == 1
    assert s.fuel == 0.0
    assert s.distance == 0.0


def test_weight_route_matches_z_route(model):
    plan = linear_plan(2000.0, 0.0, math.radians(3.0))
    a = seg.integrate_plan(model, plan, 60000.0, OptimalRange(), (0.0, 80e3),
                           use_z=True)
    b = seg.integrate_plan(model, plan, 60000.0, OptimalRange(), (0.0, 80e3),
                           use_z=False)
    assert a.w[-1] == pytest.approx(b.w[-1], rel=1e-9)


def test_time_samples_consistent_with_speed(model):
    s = seg.integrate_plan(model, linear_plan(3000.0, 0.0, math.radians(2.0)),
                           60000.0, OptimalRange(), (0.0, 60e3))
    assert abs(trapezoid_time(s) - s.duration) / s.duration < 1e-8


def test_max_lift_drag_strategy(model):
    s = seg.integrate_plan(model, level_plan(4000.0), 60000.0, MaxLiftDrag(),
                           (0.0, 20e3))
    assert np.allclose(s.r, model.polar.r_ld(0.0), rtol=1e-12)


def test_stall_floor_rejected(model):
    with pytest.raises(InfeasibleError, match="stall"):
        seg.integrate_plan(model, level_plan(2000.0), 60000.0, FixedR(0.5),
                           (0.0, 10e3))


# ---- prescribed-thrust pieces ----

def test_climb_thrust_identity(model):
    start = FlightState(0.0, 3048.0, 60000.0, 0.0, R0)
    s = seg.climb_prescribed_thrust(model, start, model.propulsion.max_thrust,
                                    AtDistance(60e3))
    for h, w, gamma in zip(s.h, s.w, s.gamma):
        assert model.polar.tau(gamma) * w == pytest.approx(
            model.propulsion.max_thrust(h), rel=1e-9)


def test_climb_at_level_thrust_starts_level(model):
    w0 = 60000.0
    law = lambda h: TW_LEVEL * w0
    start = FlightState(0.0, 5000.0, w0, 0.0, R0)
    s = seg.climb_prescribed_thrust(model, start, law, AtDistance(1000.0))
    assert abs(s.gamma[0]) < 1e-12


def test_near_zero_thrust_glides_at_best_angle(model):
    glide = math.atan(-2.0 * math.sqrt(model.polar.k * model.polar.cd0))
    start = FlightState(0.0, 6000.0, 60000.0, 0.0, R0)
    s = seg.climb_prescribed_thrust(model, start, lambda h: 1e-6,
                                    AtDistance(20e3))
    assert np.allclose(s.gamma, glide, atol=1e-7)


def test_thrust_floor_inequality_along_path(model):
    start = FlightState(0.0, 3048.0, 60000.0, 0.0, R0)
    s = seg.climb_prescribed_thrust(model, start, model.propulsion.max_thrust,
                                    AtDistance(80e3))
    floor = 2.0 * math.sqrt(model.polar.k * model.polar.cd0)
    assert np.all(s.t_over_w - np.sin(s.gamma)
                  >= floor * np.cos(s.gamma) - 1e-12)


def test_continuous_descent(model):
    start = FlightState(0.0, 3048.0, 62000.0, 0.0, R0)
    s = seg.continuous_descent(model, start, 914.4)
    assert s.phase is Phase.CONTINUOUS_DESCENT
    assert np.all(np.diff(s.h) < 0)
    assert np.all(s.gamma < 0)
    assert s.h[-1] == pytest.approx(914.4, abs=1e-6)
    assert s.fuel > 0


def test_descent_angle_tends_to_best_glide_as_idle_vanishes():
    model = custom_model(idle_fraction=1e-9)
    glide = math.atan(-2.0 * math.sqrt(model.polar.k * model.polar.cd0))
    start = FlightState(0.0, 3048.0, 62000.0, 0.0, R0)
    s = seg.continuous_descent(model, start, 1500.0)
    assert np.allclose(s.gamma, glide, atol=1e-6)


def test_descent_requires_lower_target(model):
    start = FlightState(0.0, 2000.0, 62000.0, 0.0, R0)
    with pytest.raises(DomainError):
        seg.continuous_descent(model, start, 3000.0)


def test_monitored_stop(model):
    start = FlightState(0.0, 3048.0, 60000.0, 0.0, R0)
    s = seg.climb_prescribed_thrust(
        model, start, model.propulsion.max_thrust,
        Monitored(lambda x, h, w, gamma: w - 59500.0, direction=-1))
    assert s.w[-1] == pytest.approx(59500.0, abs=1e-6)


def test_unreached_stop_is_an_error(model):
    start = FlightState(0.0, 3048.0, 60000.0, 0.0, R0)
    with pytest.raises(InfeasibleError, match="not reached"):
        seg.climb_prescribed_thrust(model, start, model.propulsion.max_thrust,
                                    AtAltitude(2000.0), x_max=50e3)


# ---- free-speed transition arc ----

@pytest.fixture(scope="module")
def transition(model):
    gamma0 = math.radians(2.5)
    start = FlightState(0.0, 3048.0, 60000.0, gamma0,
                        model.polar.r_gamma(gamma0))
    return seg.el_transition(model, start)


def test_transition_is_concave_and_decelerating(transition):
    assert np.all(np.diff(np.tan(transition.gamma)) < 0)
    assert np.all(np.diff(transition.v) < 0)


def test_transition_stops_at_idle(model, transition):
    idle = model.propulsion.idle_thrust(float(transition.h[-1]))
    assert transition.thrust[-1] == pytest.approx(idle, rel=1e-6)
    assert np.all(np.diff(transition.thrust) < 0)


def test_transition_has_interior_crest(transition):
    i = int(np.argmax(transition.h))
    assert 0 < i < len(transition.h) - 1
    assert transition.gamma[0] > 0 > transition.gamma[-1]


def test_transition_weight_equation_consistent(model, transition):
    # independent quadrature of the fuel-rate factorization
    from maxrange.variational import el_context
    ctx = el_context(model)
    vs = np.tan(transition.gamma)
    rate = np.array([-ctx.f(h) * ctx.g(v) for h, v in zip(transition.h, vs)])
    trapz = getattr(np, "trapezoid", np.trapz)
    dz = float(trapz(rate, transition.x))
    z_end = 2.0 * math.sqrt(transition.w[0]) + dz
    assert (z_end / 2.0) ** 2 == pytest.approx(transition.w[-1], rel=1e-8)


def test_transition_shift_invariance(model):
    gamma0 = math.radians(2.0)
    kwargs = dict(stop=AtDistance(25e3), max_step=250.0)
    a = seg.el_transition(
        model, FlightState(0.0, 3048.0, 60000.0, gamma0,
                           model.polar.r_gamma(gamma0)), **kwargs)
    b = seg.el_transition(
        model, FlightState(10e3, 3548.0, 60000.0, gamma0,
                           model.polar.r_gamma(gamma0)),
        stop=AtDistance(35e3), max_step=250.0)
    n = min(len(a.h), len(b.h))
    assert np.max(np.abs(b.h[:n] - 500.0 - a.h[:n])) < 3e-4


def test_transition_stop_at_level(model):
    gamma0 = math.radians(3.0)
    start = FlightState(0.0, 3048.0, 60000.0, gamma0,
                        model.polar.r_gamma(gamma0))
    s = seg.el_transition(model, start, stop=AtLevelFlight())
    assert abs(s.gamma[-1]) < 1e-10
    assert s.h[-1] > s.h[0]


# ---- speed-restricted pieces ----

def test_restricted_max_thrust_identities(model):
    h0 = model.limits.acceleration_altitude
    u = model.restriction_dynamic_pressure_area(h0)
    start = FlightState(0.0, h0, 73000.0, 0.0, u / 73000.0)
    s = seg.speed_restricted_max_thrust(model, start, stop=AtDistance(8e3))
    t_max = np.array([model.propulsion.max_thrust(h) for h in s.h])
    assert np.allclose(s.thrust, t_max, rtol=1e-9)
    v_law = np.array([model.restriction_tas(h) for h in s.h])
    assert np.allclose(s.v, v_law, rtol=1e-9)
    # climb flattens as the thrust surplus shrinks with altitude
    assert np.all(np.diff(s.gamma) < 0)
    assert s.gamma[0] > 0


def test_restricted_arc_levels_off(model):
    h0 = model.limits.acceleration_altitude
    u = model.restriction_dynamic_pressure_area(h0)
    start = FlightState(0.0, h0, 73000.0, 0.0, u / 73000.0)
    piece1 = seg.speed_restricted_max_thrust(model, start, stop=AtDistance(6e3))
    arc = seg.speed_restricted_el(model, piece1.end)
    assert abs(arc.gamma[-1]) < 1e-10
    # pressure ratio is the restriction value at every sample
    ctx_u = model.restriction_dynamic_pressure_area(0.0)
    assert np.allclose(arc.r, ctx_u / arc.w, rtol=1e-12)
    # at most one angle sign change, none after the level-off
    signs = np.sign(arc.gamma[np.abs(arc.gamma) > 1e-12])
    assert np.count_nonzero(np.diff(signs)) <= 1
    # fuel identity: weight drop equals the quadrature of the fuel rate
    from maxrange.variational import speed_law_context
    ctx = speed_law_context(model)
    rate = np.array([ctx.lagrangian(w, h, v)
                     for w, h, v in zip(arc.w, arc.h, np.tan(arc.gamma))])
    trapz = getattr(np, "trapezoid", np.trapz)
    assert float(trapz(rate, arc.x)) == pytest.approx(arc.fuel, rel=1e-6)


def test_restricted_arc_rejects_start_above_ceiling(model):
    start = FlightState(0.0, 3500.0, 70000.0, 0.02,
                        model.restriction_dynamic_pressure_area(3500.0) / 70000.0)
    with pytest.raises(DomainError, match="ceiling"):
        seg.speed_restricted_el(model, start)


def test_restricted_arc_ceiling_event(model):
    h0 = model.limits.acceleration_altitude
    u = model.restriction_dynamic_pressure_area(h0)
    start = FlightState(0.0, h0, 73000.0, math.radians(6.0), u / 73000.0)
    with pytest.raises(InfeasibleError, match="ceiling"):
        seg.speed_restricted_el(model, start, ceiling=800.0)


# ---- level change ----

def test_level_change_climb(model):
    res = seg.level_change(model, 3000.0, 35000.0, 3609.6)
    s = res.segment
    assert np.allclose(s.r, model.polar.r_zero(), atol=1e-12)
    assert s.h[-1] == pytest.approx(3609.6, abs=1e-6)
    assert res.jumps[0].thrust_after == pytest.approx(
        model.propulsion.max_thrust(3000.0))
    t1_w1 = res.jumps[1].thrust_after / s.w[-1]
    t0_w0 = res.jumps[0].thrust_before / s.w[0]
    assert t1_w1 == pytest.approx(t0_w0, abs=1e-12)
    assert res.exact_fuel == pytest.approx(res.approx_fuel, rel=0.1)


def test_level_change_descent(model):
    res = seg.level_change(model, 5000.0, 45000.0, 5000.0 - 609.6)
    s = res.segment
    assert np.all(np.diff(s.h) < 0)
    assert res.gamma_entry < 0
    slope = (s.h[-1] - s.h[0]) / (s.x[-1] - s.x[0])
    assert slope == pytest.approx(res.gamma_entry, rel=0.1)
    assert res.exact_fuel == pytest.approx(res.approx_fuel, rel=0.1)


def test_level_change_speed_tracks_level_optimum(model):
    res = seg.level_change(model, 4000.0, 40000.0, 4300.0)
    s = res.segment
    expected = np.array([model.speed(model.polar.r_zero(), h, w)
                         for h, w in zip(s.h, s.w)])
    assert np.allclose(s.v, expected, rtol=1e-12)


def test_level_change_impossible_when_heavy(model):
    # at this weight max thrust cannot even hold level flight
    with pytest.raises(InfeasibleError, match="impossible"):
        seg.level_change(model, 9000.0, 60000.0, 9300.0)


def test_level_change_descent_impossible_with_strong_idle():
    model = custom_model(idle_fraction=0.5)
    with pytest.raises(InfeasibleError, match="impossible"):
        seg.level_change(model, 0.0, 30000.0, -300.0)


def test_level_change_same_altitude_rejected(model):
    with pytest.raises(DomainError):
        seg.level_change(model, 5000.0, 45000.0, 5000.0)


def test_segment_fuel_positive_on_powered_pieces(model):
    start = FlightState(0.0, 3048.0, 60000.0, 0.0, R0)
    s = seg.climb_prescribed_thrust(model, start, model.propulsion.idle_thrust,
                                    AtDistance(30e3),
                                    phase=Phase.CONTINUOUS_DESCENT)
    assert s.fuel > 0
    assert np.all(np.diff(s.w) < 0)
