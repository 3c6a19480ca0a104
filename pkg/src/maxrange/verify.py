"""Cross-check suite: every release criterion as an executable check.

Each check pins its tolerance here and returns a CheckResult; the CLI
`verify` command and the acceptance test module both run this registry.

Check 7 (local optimality of the free-speed transition arcs under path
perturbations) fails by design of the underlying model: the second
variation of the fuel functional along any stationary arc reduces exactly
to (1/2) int F G'' (dv)^2 dx, and G'' < 0 for every admissible drag polar,
so smooth endpoint-preserving perturbations can always shave fuel (the
classical porpoising/cyclic-cruise phenomenon). The check runs faithfully
and reports the measured violation; see README design notes.
"""
import math
import time
from dataclasses import dataclass

import numpy as np

from . import oracle, segments as seg
from .errors import FlightModelError
from .model import AircraftModel
from .planner import (
    assemble_three_piece,
    assemble_two_piece,
    max_thrust_start_state,
    stationary_climb_angle,
    three_piece,
    two_piece_low_climb,
)
from .segments import AtAltitude, AtDistance, FlightState, Phase, level_plan, linear_plan
from .strategies import FixedR, OptimalRange
from .units import M_PER_NM
from .variational import el_context

# pinned tolerances
TOL_CONSTANT_R = 5e-3          # absolute, characteristic pressure ratios
TOL_CONSTANT_TW = 5e-4         # absolute, level-flight thrust ratio
TOL_CONSTANT_GLIDE_DEG = 0.01  # degrees, engine-out angle
TOL_ORACLE_REL = 1e-6          # closed form vs brute minimizer
TOL_ROUND_TRIP = 1e-10         # inversion round trips
TOL_Z_EQUIV_REL = 1e-8         # weight-route vs Z-route final weight
TOL_LEVEL_CLOSED_REL = 1e-6    # level cruise vs closed form
TOL_EL_RESIDUAL_REL = 1e-6     # transition-arc curvature residual
TOL_SHIFT_M = 3e-4             # shift-invariance reproduction (m)
FUEL_ORACLE_TOL_N = 1e-3       # brute-fuel quadrature tolerance (N)
TOL_DEST_DISTANCE_M = 0.1 * M_PER_NM
TRANSITION_LENGTH_NM = (5.0, 25.0)
TOL_STATIONARY_DEG = 0.05
TOL_LEVEL_OFF_M = 15.24        # 50 ft
TOL_LEVEL_CHANGE_PAIR = 0.10   # linearized level-change agreement
TOL_DESIGN_PARAM_REL = 1e-9


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    runtime_s: float


def _result(name, start, passed, detail) -> CheckResult:
    return CheckResult(name=name, passed=bool(passed), detail=detail,
                       runtime_s=time.perf_counter() - start)


def check_paper_constants(model: AircraftModel, tol_scale: float = 1.0) -> CheckResult:
    t0 = time.perf_counter()
    polar = model.polar
    clock = time.perf_counter()
    r_ld = polar.r_ld(0.0)
    r0 = polar.r_zero()
    tw0 = polar.thrust_ratio(r0, 0.0)
    glide = math.degrees(polar.gamma_from_thrust(0.0))
    elapsed = time.perf_counter() - clock
    checks = [
        abs(r_ld - 1.744) <= TOL_CONSTANT_R,
        abs(r0 - 3.021) <= TOL_CONSTANT_R,
        abs(tw0 - 0.0967) <= TOL_CONSTANT_TW,
        abs(glide - (-4.78)) <= TOL_CONSTANT_GLIDE_DEG,
        elapsed < 1e-3,
    ]
    detail = (f"r_ld={r_ld:.4f} r0={r0:.4f} T/W={tw0:.5f} glide={glide:.3f} deg "
              f"in {elapsed * 1e6:.0f} us")
    return _result("paper_constants", t0, all(checks), detail)


def check_optimal_r_vs_oracle(model: AircraftModel, tol_scale: float = 1.0) -> CheckResult:
    t0 = time.perf_counter()
    polar = model.polar
    worst = 0.0
    for gamma in np.radians(np.linspace(-10.0, 15.0, 61)):
        closed = polar.r_gamma(float(gamma))
        brute = oracle.brute_min_r(polar, float(gamma))
        worst = max(worst, abs(closed - brute) / brute)
    return _result("optimal_r_vs_oracle", t0, worst < TOL_ORACLE_REL * tol_scale,
                   f"max rel deviation {worst:.3g} over 61 angles")


def check_inversion_round_trips(model: AircraftModel, tol_scale: float = 1.0) -> CheckResult:
    t0 = time.perf_counter()
    polar = model.polar
    tol = TOL_ROUND_TRIP * tol_scale
    worst = 0.0
    for t in np.linspace(0.0, 0.5, 100):
        worst = max(worst, abs(polar.tau(polar.gamma_from_thrust(float(t))) - t))
    for r in np.linspace(1.8, 12.0, 100):
        worst = max(worst, abs(polar.r_gamma(polar.gamma_from_r(float(r))) - r))
    rng = np.random.default_rng(20240901)
    for _ in range(100):
        r = float(rng.uniform(1.0, 10.0))
        gamma = float(rng.uniform(math.radians(-10.0), math.radians(15.0)))
        t = polar.thrust_ratio(r, gamma)
        worst = max(worst, abs(
            polar.thrust_ratio(r, polar.gamma_fixed_r_thrust(r, t)) - t))
    return _result("inversion_round_trips", t0, worst < tol,
                   f"max round-trip error {worst:.3g}")


def check_z_substitution(model: AircraftModel, tol_scale: float = 1.0) -> CheckResult:
    t0 = time.perf_counter()
    plans = [
        (level_plan(6000.0), (0.0, 150e3)),
        (linear_plan(2000.0, 0.0, math.radians(3.0)), (0.0, 100e3)),
        (linear_plan(8000.0, 0.0, math.radians(-3.0)), (0.0, 100e3)),
    ]
    worst = 0.0
    rtol, atol = 1e-9 * tol_scale, 1e-12 * tol_scale  # scale reaches the integrator
    for plan, span in plans:
        a = seg.integrate_plan(model, plan, 60000.0, OptimalRange(), span,
                               use_z=True, rtol=rtol, atol=atol)
        b = seg.integrate_plan(model, plan, 60000.0, OptimalRange(), span,
                               use_z=False, rtol=rtol, atol=atol)
        worst = max(worst, abs(a.w[-1] - b.w[-1]) / a.w[-1])
    return _result("z_substitution", t0, worst < TOL_Z_EQUIV_REL * tol_scale,
                   f"max final-weight rel difference {worst:.3g} over 3 plans")


def check_level_closed_form(model: AircraftModel, tol_scale: float = 1.0) -> CheckResult:
    t0 = time.perf_counter()
    h0, w0, length = 9042.0, 60000.0, 100e3
    r0 = model.polar.r_zero()
    segm = seg.integrate_plan(model, level_plan(h0), w0, FixedR(r0),
                              (0.0, length))
    c_h = model.propulsion.sfc(h0)
    rho = model.atmosphere.density(h0)
    beta = (c_h / 2.0) * math.sqrt(rho * model.wing_area / (2.0 * r0)) * (
        model.polar.cd0 * r0 + model.polar.k / r0)
    worst = 0.0
    for x in np.linspace(0.0, length, 10):
        i = int(np.argmin(np.abs(segm.x - x)))
        expected = (math.sqrt(w0) - beta * segm.x[i]) ** 2
        worst = max(worst, abs(segm.w[i] - expected) / expected)
    return _result("level_closed_form", t0, worst < TOL_LEVEL_CLOSED_REL * tol_scale,
                   f"max rel deviation {worst:.3g} at 10 checkpoints")


def _transition_paths(model, gammas_deg, stop_h=914.4):
    paths = []
    for gdeg in gammas_deg:
        start = FlightState(x=0.0, h=3048.0, w=60000.0,
                            gamma=math.radians(gdeg),
                            r=model.polar.r_gamma(math.radians(gdeg)))
        paths.append(seg.el_transition(model, start, stop=AtAltitude(stop_h),
                                       max_step=250.0))
    return paths


def check_el_structure(model: AircraftModel, tol_scale: float = 1.0) -> CheckResult:
    t0 = time.perf_counter()
    ctx = el_context(model)
    problems = []
    worst_resid = 0.0
    for path in _transition_paths(model, (1.0, 2.0, 3.0, 4.0, 5.0)):
        v = np.tan(path.gamma)
        if not np.all(np.diff(v) < 0):
            problems.append("path angle not strictly decreasing (h'' >= 0)")
        if not np.all(np.diff(path.v) < 0):
            problems.append("true airspeed not strictly decreasing")
        dx = float(path.x[1] - path.x[0])
        fd = (-v[4:] + 8 * v[3:-1] - 8 * v[1:-3] + v[:-4]) / (12.0 * dx)
        rhs = np.array([ctx.transition_curvature(float(vi)) for vi in v[2:-2]])
        resid = float(np.max(np.abs(fd - rhs) / np.abs(rhs)))
        worst_resid = max(worst_resid, resid)
    if worst_resid >= TOL_EL_RESIDUAL_REL * tol_scale:
        problems.append(f"curvature residual {worst_resid:.3g}")

    # shift invariance: same angle, shifted start, fixed length span
    g0 = math.radians(2.5)
    kwargs = dict(stop=AtDistance(30e3), max_step=250.0)
    base = seg.el_transition(model, FlightState(0.0, 3048.0, 60000.0, g0,
                                                model.polar.r_gamma(g0)), **kwargs)
    dx_shift, dh_shift = 37e3, 300.0
    moved = seg.el_transition(
        model, FlightState(dx_shift, 3048.0 + dh_shift, 60000.0, g0,
                           model.polar.r_gamma(g0)),
        stop=AtDistance(dx_shift + 30e3), max_step=250.0)
    n = min(len(base.h), len(moved.h))
    shift_err = float(np.max(np.abs(moved.h[:n] - dh_shift - base.h[:n])))
    if shift_err >= TOL_SHIFT_M * tol_scale:
        problems.append(f"shift reproduction off by {shift_err:.2e} m")
    detail = (f"residual {worst_resid:.3g}, shift error {shift_err:.2e} m"
              + ("; " + "; ".join(problems) if problems else ""))
    return _result("el_structure", t0, not problems, detail)


def check_el_local_optimality(model: AircraftModel, tol_scale: float = 1.0) -> CheckResult:
    """Criterion: arc fuel <= perturbed fuel + 10 * quadrature tolerance.

    Expected to fail (see module docstring): smooth up-perturbations of a
    stationary arc reduce the brute-force fuel integral by far more than
    the quadrature tolerance.
    """
    t0 = time.perf_counter()
    rng = np.random.default_rng(42)
    margin = 10.0 * FUEL_ORACLE_TOL_N * tol_scale
    violations = []
    n_checked = 0
    for path in _transition_paths(model, (2.0, 3.0, 4.0)):
        xs = np.arange(path.x[0], path.x[-1], 50.0)
        if xs[-1] < path.x[-1]:
            xs = np.append(xs, path.x[-1])
        hs = np.interp(xs, path.x, path.h)
        w0 = float(path.w[0])
        fuel_arc = oracle.brute_fuel(model, xs, hs, w0, OptimalRange())
        span = xs[-1] - xs[0]
        s01 = (xs - xs[0]) / span
        for _ in range(20):
            n_checked += 1
            amp = float(rng.uniform(-50.0, 50.0))
            mode = int(rng.integers(1, 4))
            phase = float(rng.uniform(0.0, 2.0 * math.pi))
            bump = amp * np.sin(np.pi * s01) ** 2 * np.cos(mode * np.pi * s01 + phase)
            fuel_pert = oracle.brute_fuel(model, xs, hs + bump, w0, OptimalRange())
            if fuel_arc > fuel_pert + margin:
                violations.append(fuel_arc - fuel_pert)
    if violations:
        detail = (f"{len(violations)}/{n_checked} perturbations burn less fuel "
                  f"than the arc (max saving {max(violations):.3f} N vs margin "
                  f"{margin:.3f} N): stationary arcs are not local minima "
                  "(see README design notes)")
    else:
        detail = f"all {n_checked} perturbations within margin {margin:.3f} N"
    return _result("el_local_optimality", t0, not violations, detail)


def check_three_piece_shooting(model: AircraftModel, tol_scale: float = 1.0) -> CheckResult:
    t0 = time.perf_counter()
    dest = 450.0 * M_PER_NM
    traj = three_piece(model, 3048.0, 60000.0, dest)
    problems = []
    if abs(traj.end.x - dest) > TOL_DEST_DISTANCE_M:
        problems.append(f"distance error {abs(traj.end.x - dest):.1f} m")
    faf = model.limits.final_approach_fix
    if abs(traj.end.h - faf) > 0.5:
        problems.append(f"altitude error {abs(traj.end.h - faf):.2f} m")
    trans = next(s for s in traj.segments if s.phase is Phase.EL_TRANSITION)
    if not np.all(np.diff(trans.thrust) < 0):
        problems.append("transition thrust not monotone decreasing")
    t_max0 = model.propulsion.max_thrust(float(trans.h[0]))
    t_idle1 = model.propulsion.idle_thrust(float(trans.h[-1]))
    if abs(trans.thrust[0] - t_max0) > 1e-6 * t_max0:
        problems.append("transition does not start at maximum thrust")
    if abs(trans.thrust[-1] - t_idle1) > 1e-4 * t_idle1:
        problems.append("transition does not end at idle thrust")
    length_nm = trans.distance / M_PER_NM
    if not TRANSITION_LENGTH_NM[0] <= length_nm <= TRANSITION_LENGTH_NM[1]:
        problems.append(f"transition length {length_nm:.1f} nm outside "
                        f"{TRANSITION_LENGTH_NM}")
    detail = (f"distance residual {traj.end.x - dest:+.1f} m, transition "
              f"{length_nm:.1f} nm" + ("; " + "; ".join(problems) if problems else ""))
    return _result("three_piece_shooting", t0, not problems, detail)


def check_stationary_climb_angle(model: AircraftModel, tol_scale: float = 1.0) -> CheckResult:
    t0 = time.perf_counter()
    gamma_star = stationary_climb_angle(model)
    start = max_thrust_start_state(model, 3048.0, 60000.0)
    climb = seg.climb_prescribed_thrust(
        model, start, model.propulsion.max_thrust,
        AtDistance(700.0 * M_PER_NM), sample_dx=500.0)
    final = float(climb.gamma[-1])
    err_deg = math.degrees(abs(final - gamma_star))
    ok = gamma_star > 0 and err_deg < TOL_STATIONARY_DEG
    return _result(
        "stationary_climb_angle", t0, ok,
        f"gamma*={math.degrees(gamma_star):.4f} deg, 700 nm climb ends "
        f"{err_deg:.4f} deg away")


def check_two_piece(model: AircraftModel, tol_scale: float = 1.0) -> CheckResult:
    t0 = time.perf_counter()
    traj = two_piece_low_climb(model, 73000.0)
    target = model.limits.restriction_ceiling
    problems = []
    if abs(traj.end.h - target) > TOL_LEVEL_OFF_M:
        problems.append(f"level-off misses ceiling by {traj.end.h - target:+.1f} m")
    if abs(traj.end.gamma) > 1e-6:
        problems.append(f"level-off angle {traj.end.gamma:.2e} rad")
    levels = []
    for x_cut_nm in np.arange(1.0, 4.01, 0.5):
        fam = assemble_two_piece(model, model.limits.acceleration_altitude,
                                 73000.0, float(x_cut_nm) * M_PER_NM)
        levels.append(fam.end.h)
    if not all(b > a for a, b in zip(levels, levels[1:])):
        problems.append(f"sweep level-offs not monotone: {np.round(levels, 1)}")
    detail = (f"level-off {traj.end.h:.1f} m vs {target:.1f} m; sweep "
              f"{levels[0]:.0f}..{levels[-1]:.0f} m"
              + ("; " + "; ".join(problems) if problems else ""))
    return _result("two_piece_level_off", t0, not problems, detail)


def check_level_change(model: AircraftModel, tol_scale: float = 1.0) -> CheckResult:
    t0 = time.perf_counter()
    problems = []
    cases = [
        (3000.0, 35000.0, 3000.0 + 609.6),   # climb +2000 ft
        (5000.0, 45000.0, 5000.0 - 609.6),   # descent -2000 ft
    ]
    details = []
    for h0, w0, h1 in cases:
        res = seg.level_change(model, h0, w0, h1)
        s = res.segment
        r0 = model.polar.r_zero()
        if float(np.max(np.abs(s.r - r0))) > 1e-9:
            problems.append("pressure ratio drifts from the level optimum")
        v_expected = np.array([model.speed(r0, h, w) for h, w in zip(s.h, s.w)])
        if float(np.max(np.abs(s.v - v_expected) / v_expected)) > 1e-9:
            problems.append("speed schedule departs from the level-optimal law")
        w1 = float(s.w[-1])
        t1_over_w1 = res.jumps[1].thrust_after / w1
        t0_over_w0 = res.jumps[0].thrust_before / w0
        if abs(t1_over_w1 - t0_over_w0) > 1e-10:
            problems.append("terminal thrust does not restore the level T/W")
        slope = (float(s.h[-1]) - h0) / (float(s.x[-1]) - float(s.x[0]))
        thrust_fn = (model.propulsion.max_thrust if h1 > h0
                     else model.propulsion.idle_thrust)
        tw_jump = (thrust_fn(h0) - res.jumps[0].thrust_before) / w0
        trio = (slope, res.gamma_entry, tw_jump)
        worst = max(abs(a / b - 1.0) for a in trio for b in trio)
        if worst > TOL_LEVEL_CHANGE_PAIR:
            problems.append(f"linearization off by {worst * 100:.1f}% "
                            f"({h0:.0f}->{h1:.0f} m)")
        details.append(f"{h0:.0f}->{h1:.0f} m: slope/entry-angle/thrust-jump "
                       f"agree to {worst * 100:.1f}%")
    return _result("level_change", t0, not problems,
                   "; ".join(details + problems))


def check_design_parameter(model: AircraftModel, tol_scale: float = 1.0) -> CheckResult:
    t0 = time.perf_counter()
    worst = 0.0
    details = []
    for x_c in (0.0, 0.25, 0.5):
        prop = model.propulsion.__class__(
            t_max_sl=model.propulsion.t_max_sl,
            idle_fraction=model.propulsion.idle_fraction,
            thrust_exponent=2.0 * x_c + 1.0,
            c_sl=model.propulsion.c_sl,
            sfc_exponent=x_c,
            power_setting=model.propulsion.power_setting,
            atmosphere=model.atmosphere,
        )
        values = [prop.design_parameter(h) for h in np.linspace(0.0, 14000.0, 29)]
        spread = (max(values) - min(values)) / abs(values[0])
        worst = max(worst, spread)
        details.append(f"x_T={2 * x_c + 1:.1f}: spread {spread:.2e}")
    return _result("design_parameter_constant", t0,
                   worst < TOL_DESIGN_PARAM_REL * tol_scale, "; ".join(details))


_FAST_CHECKS = (
    check_paper_constants,
    check_optimal_r_vs_oracle,
    check_inversion_round_trips,
    check_z_substitution,
    check_level_closed_form,
    check_design_parameter,
)
_FULL_CHECKS = _FAST_CHECKS + (
    check_el_structure,
    check_el_local_optimality,
    check_three_piece_shooting,
    check_stationary_climb_angle,
    check_two_piece,
    check_level_change,
)


def run_verification(model: AircraftModel, *, tol_scale: float = 1.0,
                     quick: bool = False) -> list[CheckResult]:
    """Run the cross-check suite; never raises on a failing check."""
    results = []
    for fn in (_FAST_CHECKS if quick else _FULL_CHECKS):
        try:
            results.append(fn(model, tol_scale))
        except FlightModelError as exc:
            results.append(CheckResult(name=fn.__name__.removeprefix("check_"),
                                       passed=False,
                                       detail=f"raised {type(exc).__name__}: {exc}",
                                       runtime_s=0.0))
    return results
