"""Trajectory-piece integrators.

Each builder integrates one physically distinct flight regime and returns a
Segment: a densely sampled piece with per-sample derived quantities (true
airspeed, thrust, lift coefficient, elapsed time) and fuel/distance totals.
Thrust feasibility is flagged per sample, never enforced; infeasible
operating points are diagnostics, not errors.

Distance x is the independent variable throughout; time comes from the
parallel integration of 1/(V cos(gamma)).
"""
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Sequence, Union

import numpy as np

from . import odekit
from .aero import speed_from_r
from .errors import DomainError, InfeasibleError
from .model import AircraftModel
from .odekit import EventSpec, OdeProblem, SolutionPath, integrate
from .strategies import FixedR, MaxLiftDrag, OptimalRange, RStrategy, strategy_r
from .variational import el_context, speed_law_context

_MAX_SLOPE = math.tan(math.radians(89.0))
_DEFAULT_X_MAX = 4.0e6  # hard cap (m) for event-terminated integrations
_DEFAULT_SAMPLE_DX = 50.0  # output resampling spacing (m)


class Phase(str, Enum):
    PLAN_FOLLOWING = "plan_following"
    MAX_THRUST_CLIMB = "max_thrust_climb"
    EL_TRANSITION = "el_transition"
    CONTINUOUS_DESCENT = "continuous_descent"
    SPEED_RESTRICTED_MAX_THRUST = "speed_restricted_max_thrust"
    SPEED_RESTRICTED_EL = "speed_restricted_el"
    LEVEL_CHANGE = "level_change"
    LEVEL_CRUISE = "level_cruise"
    ACCELERATION = "acceleration"


@dataclass(frozen=True)
class FlightState:
    """Snapshot (x, h, W, gamma, R); everything else is derivable."""

    x: float
    h: float
    w: float
    gamma: float
    r: float

    def __post_init__(self):
        if self.w <= 0:
            raise DomainError(f"weight must be positive, got {self.w}")


# ---- stop conditions ----

@dataclass(frozen=True)
class AtDistance:
    x: float


@dataclass(frozen=True)
class AtAltitude:
    h: float


@dataclass(frozen=True)
class AtLevelFlight:
    """Stop where the flight path angle crosses zero."""


@dataclass(frozen=True)
class AtIdleThrust:
    """Stop where the schedule's thrust falls to the idle thrust."""


@dataclass(frozen=True)
class Monitored:
    """Stop at a zero crossing of a custom monitor fn(x, h, w, gamma)."""

    fn: Callable[[float, float, float, float], float]
    direction: int = 0


StopCondition = Union[AtDistance, AtAltitude, AtLevelFlight, AtIdleThrust, Monitored]


# ---- flight plans (prescribed altitude profiles) ----

@dataclass(frozen=True)
class FlightPlan:
    """Piecewise-smooth altitude profile with slope accessor."""

    h: Callable[[float], float]
    dh_dx: Callable[[float], float]


def level_plan(h0: float) -> FlightPlan:
    return FlightPlan(h=lambda x: h0, dh_dx=lambda x: 0.0)


def linear_plan(h0: float, x0: float, gamma: float) -> FlightPlan:
    """Constant-angle plan through (x0, h0)."""
    slope = math.tan(gamma)
    return FlightPlan(h=lambda x: h0 + slope * (x - x0), dh_dx=lambda x: slope)


@dataclass
class Segment:
    """One sampled trajectory piece with derived per-sample quantities."""

    phase: Phase
    x: np.ndarray
    h: np.ndarray
    w: np.ndarray
    gamma: np.ndarray
    r: np.ndarray
    v: np.ndarray
    thrust: np.ndarray
    t_over_w: np.ndarray
    cl: np.ndarray
    time: np.ndarray
    feasible: np.ndarray
    fuel: float = field(init=False)
    distance: float = field(init=False)
    duration: float = field(init=False)

    def __post_init__(self):
        n = len(self.x)
        if n == 0:
            raise DomainError("segment must contain at least one sample")
        if np.any(self.w <= 0):
            raise DomainError("segment weight samples must stay positive")
        if n > 1:
            if not np.all(np.diff(self.x) > 0):
                raise DomainError("segment distance samples must strictly increase")
            # weight decreases wherever the schedule's thrust is positive;
            # diagnostic arcs beyond the engine-out glide angle (negative
            # required thrust) are exempt, matching their infeasible flags
            burning = (self.t_over_w[:-1] > 0) & (self.t_over_w[1:] > 0)
            if not np.all(np.diff(self.w)[burning] < 0):
                raise DomainError("segment weight samples must strictly decrease")
            if not np.all(np.diff(self.time) > 0):
                raise DomainError("segment time samples must strictly increase")
        self.fuel = float(self.w[0] - self.w[-1])
        self.distance = float(self.x[-1] - self.x[0])
        self.duration = float(self.time[-1] - self.time[0])

    @property
    def start(self) -> FlightState:
        return FlightState(float(self.x[0]), float(self.h[0]), float(self.w[0]),
                           float(self.gamma[0]), float(self.r[0]))

    @property
    def end(self) -> FlightState:
        return FlightState(float(self.x[-1]), float(self.h[-1]), float(self.w[-1]),
                           float(self.gamma[-1]), float(self.r[-1]))

    @property
    def all_feasible(self) -> bool:
        return bool(np.all(self.feasible))


def _finalize(model: AircraftModel, phase: Phase, xs, hs, ws, gammas, rs, times,
              slack: float) -> Segment:
    """Derive per-sample quantities and package a Segment."""
    xs = np.asarray(xs, dtype=float)
    hs = np.asarray(hs, dtype=float)
    ws = np.asarray(ws, dtype=float)
    gammas = np.asarray(gammas, dtype=float)
    rs = np.asarray(rs, dtype=float)
    times = np.asarray(times, dtype=float)

    if np.any(rs < model.r_stall - 1e-12):
        worst = float(np.min(rs))
        raise InfeasibleError(
            f"pressure ratio {worst:.4f} below the stall floor {model.r_stall}"
        )

    atm = model.atmosphere
    rho = atm.rho_sl * np.exp(-hs / atm.scale_height)
    v = np.sqrt(2.0 * rs * ws / (rho * model.wing_area))
    cosg = np.cos(gammas)
    t_over_w = model.polar.cd0 * rs + model.polar.k * cosg**2 / rs + np.sin(gammas)
    thrust = t_over_w * ws
    cl = cosg / rs

    prop = model.propulsion
    sigma = rho / atm.rho_sl
    t_max = prop.power_setting * prop.t_max_sl * sigma**prop.thrust_exponent
    t_idle = prop.idle_fraction * prop.t_max_sl * sigma**prop.thrust_exponent
    feasible = (t_over_w >= t_idle / ws - slack) & (t_over_w <= t_max / ws + slack)

    return Segment(phase=phase, x=xs, h=hs, w=ws, gamma=gammas, r=rs, v=v,
                   thrust=thrust, t_over_w=t_over_w, cl=cl, time=times,
                   feasible=feasible)


def _sample_grid(x0: float, x1: float, sample_dx: float) -> np.ndarray:
    if x1 <= x0:
        return np.array([x0])
    n = max(2, int(math.ceil((x1 - x0) / sample_dx)) + 1)
    return np.linspace(x0, x1, n)


def _resolve_stop(model, start_x, start_h, stop, x_max, gamma_of, w_of):
    """Translate a StopCondition into an integration span plus events."""
    cap = x_max if x_max is not None else start_x + _DEFAULT_X_MAX
    if isinstance(stop, AtDistance):
        if stop.x < start_x:
            raise DomainError("stop distance lies behind the segment start")
        return (start_x, stop.x), ()
    if isinstance(stop, AtAltitude):
        ev = EventSpec(lambda x, y: y[0] - stop.h, direction=0, name="altitude")
        return (start_x, cap), (ev,)
    if isinstance(stop, AtLevelFlight):
        ev = EventSpec(lambda x, y: gamma_of(x, y), direction=0, name="level")
        return (start_x, cap), (ev,)
    if isinstance(stop, AtIdleThrust):
        prop = model.propulsion

        def monitor(x, y):
            gamma = gamma_of(x, y)
            return model.polar.tau(gamma) * w_of(x, y) - prop.idle_thrust(y[0])

        return (start_x, cap), (EventSpec(monitor, direction=-1, name="idle"),)
    if isinstance(stop, Monitored):
        ev = EventSpec(
            lambda x, y: stop.fn(x, y[0], w_of(x, y), gamma_of(x, y)),
            direction=stop.direction, name="monitor",
        )
        return (start_x, cap), (ev,)
    raise DomainError(f"unknown stop condition {stop!r}")


def _require_event(path: SolutionPath, stop) -> None:
    if isinstance(stop, AtDistance):
        return
    if path.terminal != "event":
        raise InfeasibleError(
            f"stop condition {type(stop).__name__} not reached within the "
            f"integration cap (ended at x={path.x_end:.0f} m)"
        )


# ---- plan-following integration ----

def integrate_plan(model: AircraftModel, plan: FlightPlan, w0: float,
                   strategy: RStrategy, span: tuple[float, float], *,
                   use_z: bool = True, t0: float = 0.0,
                   rtol: float = 1e-9, atol: float = 1e-12,
                   max_step: float = 2000.0,
                   sample_dx: float = _DEFAULT_SAMPLE_DX,
                   feasibility_slack: float = 1e-6,
                   phase: Phase = Phase.PLAN_FOLLOWING) -> Segment:
    """Weight/time along a prescribed flight plan with an R strategy.

    Integrates the substituted variable Z = 2 sqrt(W) by default
    (`use_z=False` integrates W directly; the two agree to integrator
    tolerance and the equivalence is part of the verification suite).

    Raises:
        InfeasibleError: If the strategy's pressure ratio falls below the
            stall floor anywhere on the span.
    """
    if w0 <= 0:
        raise DomainError(f"initial weight must be positive, got {w0}")
    x0, x1 = span
    if x1 < x0:
        raise DomainError(f"span must be nondecreasing, got {span}")
    polar = model.polar
    prop = model.propulsion
    atm = model.atmosphere
    s_wing = model.wing_area

    def local(x):
        slope = plan.dh_dx(x)
        if abs(slope) > _MAX_SLOPE:
            raise DomainError(f"plan slope exceeds 89 degrees at x={x:.0f}")
        gamma = math.atan(slope)
        r = strategy_r(strategy, polar, gamma)
        if r < model.r_stall:
            raise InfeasibleError(
                f"strategy pressure ratio {r:.4f} below stall floor at x={x:.0f}"
            )
        return plan.h(x), gamma, r

    def rhs(x, y):
        h, gamma, r = local(x)
        w = (y[0] / 2.0) ** 2 if use_z else y[0]
        if w <= 0:
            raise InfeasibleError(f"weight exhausted at x={x:.0f} m")
        rho = atm.density(h)
        c_h = prop.sfc(h)
        tw = polar.thrust_ratio(r, gamma)
        dz = -c_h / math.cos(gamma) * tw * math.sqrt(rho * s_wing / (2.0 * r))
        dlead = dz if use_z else dz * math.sqrt(w)
        v = math.sqrt(2.0 * r * w / (rho * s_wing))
        return np.array([dlead, 1.0 / (v * math.cos(gamma))])

    y0 = np.array([2.0 * math.sqrt(w0) if use_z else w0, t0])
    if x1 == x0:
        h0, g0, r0 = local(x0)
        return _finalize(model, phase, [x0], [h0], [w0], [g0], [r0], [t0],
                         feasibility_slack)

    path = integrate(OdeProblem(rhs, y0, (x0, x1), rtol=rtol, atol=atol,
                                max_step=max_step))
    grid = _sample_grid(x0, path.x_end, sample_dx)
    states = path(grid)
    lead = states[:, 0]
    ws = (lead / 2.0) ** 2 if use_z else lead
    hs, gammas, rs = zip(*(local(x) for x in grid))
    return _finalize(model, phase, grid, hs, ws, gammas, rs, states[:, 1],
                     feasibility_slack)


# ---- prescribed-thrust climbs and descents ----

def climb_prescribed_thrust(model: AircraftModel, start: FlightState,
                            thrust_law: Callable[[float], float],
                            stop: StopCondition, *, t0: float = 0.0,
                            x_max: float | None = None,
                            rtol: float = 1e-9, atol: float = 1e-12,
                            max_step: float = 2000.0,
                            sample_dx: float = _DEFAULT_SAMPLE_DX,
                            feasibility_slack: float = 1e-6,
                            phase: Phase = Phase.MAX_THRUST_CLIMB) -> Segment:
    """Range-optimal path under a prescribed thrust-vs-altitude law.

    At every sample the flight path angle solves tau(gamma) = T(h)/W and
    the pressure ratio is the range optimum r_gamma(gamma); weight follows
    the quasi-steady fuel equation.

    Raises:
        InfeasibleError: If the thrust law leaves the invertible thrust
            range anywhere along the path (reported with the altitude).
    """
    polar = model.polar

    def gamma_at(h, w):
        try:
            return polar.gamma_from_thrust(thrust_law(h) / w)
        except DomainError as exc:
            raise InfeasibleError(
                f"prescribed thrust infeasible at altitude {h:.0f} m: {exc}"
            ) from exc

    def rhs(x, y):
        h, w = y[0], y[1]
        if w <= 0:
            raise InfeasibleError(f"weight exhausted at x={x:.0f} m")
        gamma = gamma_at(h, w)
        r = polar.r_gamma(gamma)
        v = model.speed(r, h, w)
        thrust = thrust_law(h)
        cosg = math.cos(gamma)
        return np.array([
            math.tan(gamma),
            -model.propulsion.sfc(h) * thrust / (v * cosg),
            1.0 / (v * cosg),
        ])

    span, events = _resolve_stop(
        model, start.x, start.h, stop, x_max,
        gamma_of=lambda x, y: gamma_at(y[0], y[1]),
        w_of=lambda x, y: y[1],
    )
    y0 = np.array([start.h, start.w, t0])
    if span[1] == span[0]:
        g0 = gamma_at(start.h, start.w)
        return _finalize(model, phase, [start.x], [start.h], [start.w], [g0],
                         [polar.r_gamma(g0)], [t0], feasibility_slack)

    path = integrate(OdeProblem(rhs, y0, span, rtol=rtol, atol=atol,
                                max_step=max_step, events=events))
    _require_event(path, stop)
    grid = _sample_grid(start.x, path.x_end, sample_dx)
    states = path(grid)
    hs, ws, times = states[:, 0], states[:, 1], states[:, 2]
    gammas = np.array([gamma_at(h, w) for h, w in zip(hs, ws)])
    rs = np.array([polar.r_gamma(g) for g in gammas])
    return _finalize(model, phase, grid, hs, ws, gammas, rs, times,
                     feasibility_slack)


def continuous_descent(model: AircraftModel, start: FlightState,
                       h_target: float, *, t0: float = 0.0,
                       x_max: float | None = None, rtol: float = 1e-9,
                       atol: float = 1e-12,
                       sample_dx: float = _DEFAULT_SAMPLE_DX,
                       feasibility_slack: float = 1e-6) -> Segment:
    """Idle-thrust range-optimal descent to a target altitude."""
    if h_target >= start.h:
        raise DomainError(
            f"descent target {h_target:.0f} m is not below start {start.h:.0f} m"
        )
    return climb_prescribed_thrust(
        model, start, model.propulsion.idle_thrust, AtAltitude(h_target),
        t0=t0, x_max=x_max, rtol=rtol, atol=atol, sample_dx=sample_dx,
        feasibility_slack=feasibility_slack, phase=Phase.CONTINUOUS_DESCENT,
    )


# ---- the free-speed transition arc ----

def el_transition(model: AircraftModel, start: FlightState,
                  stop_at_idle: bool = True, *,
                  stop: StopCondition | None = None, t0: float = 0.0,
                  x_max: float | None = None, rtol: float = 1e-9,
                  atol: float = 1e-12, max_step: float = 500.0,
                  sample_dx: float = _DEFAULT_SAMPLE_DX,
                  feasibility_slack: float = 1e-6) -> Segment:
    """Concave transition arc of the free-speed variational problem.

    Starting from the supplied path angle, the arc's angle decreases
    monotonically through level flight (the top of descent) toward the
    idle-thrust angle; speed and required thrust both decrease. By default
    integration stops where the schedule's thrust reaches idle thrust,
    handing over to a continuous descent with no discontinuity.

    The curvature law is ELContext.transition_curvature; see its docstring
    for the orientation discussion.
    """
    ctx = el_context(model)
    polar = model.polar

    def rhs(x, y):
        h, v, z = y[0], y[1], y[2]
        if z <= 0:
            raise InfeasibleError(f"weight exhausted at x={x:.0f} m")
        gamma = math.atan(v)
        r = polar.r_gamma(gamma)
        w = (z / 2.0) ** 2
        speed = model.speed(r, h, w)
        return np.array([
            v,
            ctx.transition_curvature(v),
            -ctx.f(h) * ctx.g(v),
            1.0 / (speed * math.cos(gamma)),
        ])

    if stop is None:
        stop = AtIdleThrust() if stop_at_idle else AtDistance(
            start.x + (x_max if x_max is not None else _DEFAULT_X_MAX)
        )
    span, events = _resolve_stop(
        model, start.x, start.h, stop, x_max,
        gamma_of=lambda x, y: math.atan(y[1]),
        w_of=lambda x, y: (y[2] / 2.0) ** 2,
    )
    y0 = np.array([start.h, math.tan(start.gamma), 2.0 * math.sqrt(start.w), t0])
    path = integrate(OdeProblem(rhs, y0, span, rtol=rtol, atol=atol,
                                max_step=max_step, events=events))
    _require_event(path, stop)
    grid = _sample_grid(start.x, path.x_end, sample_dx)
    states = path(grid)
    hs = states[:, 0]
    gammas = np.arctan(states[:, 1])
    ws = (states[:, 2] / 2.0) ** 2
    rs = np.array([polar.r_gamma(g) for g in gammas])
    return _finalize(model, Phase.EL_TRANSITION, grid, hs, ws, gammas, rs,
                     states[:, 3], feasibility_slack)


# ---- speed-restricted pieces ----

def speed_restricted_el(model: AircraftModel, start: FlightState,
                        v_law: Callable[[float], float] | None = None,
                        stop_at_level: bool = True, *,
                        stop: StopCondition | None = None,
                        ceiling: float | None = None, t0: float = 0.0,
                        x_max: float | None = None, rtol: float = 1e-9,
                        atol: float = 1e-12, max_step: float = 500.0,
                        sample_dx: float = _DEFAULT_SAMPLE_DX,
                        feasibility_slack: float = 1e-6) -> Segment:
    """Stationary arc of the speed-restricted variational problem.

    Integrates h' = v, v' = (L_h - L_vh v)/L_vv, W' = -L for the
    prescribed-speed Lagrangian; by default stops where the path levels
    off (v crossing zero from above).

    Args:
        ceiling: Optional hard altitude bound; crossing it raises
            InfeasibleError. Shooting drivers leave it None so that trial
            arcs may overshoot the target altitude.

    Raises:
        InfeasibleError: On loss of convexity (L_vv <= 0), on a ceiling
            crossing, or if the start lies above the speed-restriction
            ceiling.
    """
    limits = model.limits
    if start.h >= limits.restriction_ceiling:
        raise DomainError(
            f"speed-restricted arc must start below the restriction ceiling "
            f"({limits.restriction_ceiling:.0f} m), got {start.h:.0f} m"
        )
    ctx = speed_law_context(model, v_law)
    polar = model.polar

    def rhs(x, y):
        h, v, w = y[0], y[1], y[2]
        if w <= 0:
            raise InfeasibleError(f"weight exhausted at x={x:.0f} m")
        lagr, l_h, _l_v, l_vv, l_vh = ctx.partials(w, h, v)
        if l_vv <= 0:
            raise InfeasibleError(
                f"speed-restricted arc lost convexity at altitude {h:.0f} m "
                f"(L_vv = {l_vv:.3g})"
            )
        gamma = math.atan(v)
        return np.array([
            v,
            (l_h - l_vh * v) / l_vv,
            -lagr,
            1.0 / (ctx.v_f(h) * math.cos(gamma)),
        ])

    if stop is None:
        stop = AtLevelFlight() if stop_at_level else AtDistance(
            start.x + (x_max if x_max is not None else _DEFAULT_X_MAX)
        )
    span, events = _resolve_stop(
        model, start.x, start.h, stop, x_max,
        gamma_of=lambda x, y: math.atan(y[1]),
        w_of=lambda x, y: y[2],
    )
    if ceiling is not None:
        events = events + (
            EventSpec(lambda x, y: y[0] - ceiling, direction=1, name="ceiling"),
        )
    y0 = np.array([start.h, math.tan(start.gamma), start.w, t0])
    path = integrate(OdeProblem(rhs, y0, span, rtol=rtol, atol=atol,
                                max_step=max_step, events=events))
    if (ceiling is not None and path.terminal == "event"
            and path.event_index == len(events) - 1):
        raise InfeasibleError(
            f"speed-restricted arc crossed the ceiling {ceiling:.0f} m while "
            "still climbing"
        )
    _require_event(path, stop)
    grid = _sample_grid(start.x, path.x_end, sample_dx)
    states = path(grid)
    hs = states[:, 0]
    gammas = np.arctan(states[:, 1])
    ws = states[:, 2]
    rs = np.array([ctx.u(h) / w for h, w in zip(hs, ws)])
    return _finalize(model, Phase.SPEED_RESTRICTED_EL, grid, hs, ws, gammas,
                     rs, states[:, 3], feasibility_slack)


def speed_restricted_max_thrust(model: AircraftModel, start: FlightState,
                                v_law: Callable[[float], float] | None = None,
                                stop: StopCondition | None = None, *,
                                t0: float = 0.0, x_max: float | None = None,
                                rtol: float = 1e-9, atol: float = 1e-12,
                                max_step: float = 2000.0,
                                sample_dx: float = _DEFAULT_SAMPLE_DX,
                                feasibility_slack: float = 1e-6) -> Segment:
    """Maximum-thrust climb at prescribed airspeed.

    Fully determined by the initial conditions: at each sample the climb
    angle solves the quasi-steady thrust balance at the prescribed
    pressure ratio R = U(h)/W with T = T_max(h).

    Raises:
        InfeasibleError: If maximum thrust cannot be balanced at the
            prescribed speed (with the offending altitude).
    """
    if stop is None:
        raise DomainError("speed_restricted_max_thrust requires a stop condition")
    ctx = speed_law_context(model, v_law)
    polar = model.polar
    prop = model.propulsion

    def gamma_at(h, w):
        try:
            return polar.gamma_fixed_r_thrust(ctx.u(h) / w, prop.max_thrust(h) / w)
        except InfeasibleError as exc:
            raise InfeasibleError(f"at altitude {h:.0f} m: {exc}") from exc

    def rhs(x, y):
        h, w = y[0], y[1]
        if w <= 0:
            raise InfeasibleError(f"weight exhausted at x={x:.0f} m")
        gamma = gamma_at(h, w)
        cosg = math.cos(gamma)
        v_true = ctx.v_f(h)
        return np.array([
            math.tan(gamma),
            -prop.sfc(h) * prop.max_thrust(h) / (v_true * cosg),
            1.0 / (v_true * cosg),
        ])

    span, events = _resolve_stop(
        model, start.x, start.h, stop, x_max,
        gamma_of=lambda x, y: gamma_at(y[0], y[1]),
        w_of=lambda x, y: y[1],
    )
    y0 = np.array([start.h, start.w, t0])
    if span[1] == span[0]:
        g0 = gamma_at(start.h, start.w)
        return _finalize(model, Phase.SPEED_RESTRICTED_MAX_THRUST, [start.x],
                         [start.h], [start.w], [g0], [ctx.u(start.h) / start.w],
                         [t0], feasibility_slack)
    path = integrate(OdeProblem(rhs, y0, span, rtol=rtol, atol=atol,
                                max_step=max_step, events=events))
    _require_event(path, stop)
    grid = _sample_grid(start.x, path.x_end, sample_dx)
    states = path(grid)
    hs, ws, times = states[:, 0], states[:, 1], states[:, 2]
    gammas = np.array([gamma_at(h, w) for h, w in zip(hs, ws)])
    rs = np.array([ctx.u(h) / w for h, w in zip(hs, ws)])
    return _finalize(model, Phase.SPEED_RESTRICTED_MAX_THRUST, grid, hs, ws,
                     gammas, rs, times, feasibility_slack)


# ---- constant-R flight level change ----

@dataclass(frozen=True)
class ThrustJump:
    """Instantaneous commanded thrust change at a level-change endpoint."""

    x: float
    h: float
    thrust_before: float
    thrust_after: float


@dataclass(frozen=True)
class LevelChangeResult:
    """Level-change segment plus its endpoint thrust jumps and fuel accounting."""

    segment: Segment
    jumps: tuple[ThrustJump, ThrustJump]
    gamma_entry: float
    exact_fuel: float
    approx_fuel: float
    t_over_w_level: float


def level_change(model: AircraftModel, h0: float, w0: float, h1: float, *,
                 x0: float = 0.0, t0: float = 0.0,
                 x_max: float | None = None, rtol: float = 1e-9,
                 atol: float = 1e-12, max_step: float = 2000.0,
                 sample_dx: float = _DEFAULT_SAMPLE_DX,
                 feasibility_slack: float = 1e-6) -> LevelChangeResult:
    """Climb or descend between level-cruise altitudes at constant R = R0.

    The change keeps the range-optimal level-flight pressure ratio (and
    hence its speed schedule) at all times: thrust jumps to maximum
    (climb) or idle (descent) at entry, the angle follows the fixed-R
    thrust balance at each altitude, and at exit thrust jumps again to
    restore the level T/W ratio. Both jumps are recorded; the jump
    instants themselves burn no fuel.

    Raises:
        InfeasibleError: "flight level change impossible" when maximum
            thrust at the start cannot exceed the level-flight requirement
            (climb), or idle cannot fall below it (descent).
    """
    if h1 == h0:
        raise DomainError("level change requires distinct altitudes")
    climb = h1 > h0
    polar = model.polar
    prop = model.propulsion
    r0 = polar.r_zero()
    tw_level = polar.thrust_ratio(r0, 0.0)

    thrust_fn = prop.max_thrust if climb else prop.idle_thrust
    if climb and thrust_fn(h0) / w0 <= tw_level:
        raise InfeasibleError(
            f"flight level change impossible: max thrust at {h0:.0f} m gives "
            f"T/W {thrust_fn(h0) / w0:.4f} <= level requirement {tw_level:.4f}"
        )
    if not climb and thrust_fn(h0) / w0 >= tw_level:
        raise InfeasibleError(
            f"flight level change impossible: idle thrust at {h0:.0f} m "
            "cannot descend at the level-flight pressure ratio"
        )

    def gamma_at(h, w):
        try:
            return polar.gamma_fixed_r_thrust(r0, thrust_fn(h) / w)
        except InfeasibleError as exc:
            raise InfeasibleError(f"at altitude {h:.0f} m: {exc}") from exc

    def rhs(x, y):
        h, w = y[0], y[1]
        if w <= 0:
            raise InfeasibleError(f"weight exhausted at x={x:.0f} m")
        gamma = gamma_at(h, w)
        v0 = model.speed(r0, h, w)
        cosg = math.cos(gamma)
        return np.array([
            math.tan(gamma),
            -prop.sfc(h) * thrust_fn(h) / (v0 * cosg),
            1.0 / (v0 * cosg),
        ])

    events = (
        EventSpec(lambda x, y: y[0] - h1, direction=1 if climb else -1,
                  name="altitude"),
        EventSpec(lambda x, y: gamma_at(y[0], y[1]) - (1e-6 if climb else -1e-6),
                  direction=-1 if climb else 1, name="stall"),
    )
    cap = x_max if x_max is not None else x0 + _DEFAULT_X_MAX
    path = integrate(OdeProblem(rhs, np.array([h0, w0, t0]), (x0, cap),
                                rtol=rtol, atol=atol, max_step=max_step,
                                events=events))
    if path.terminal != "event" or path.event_index != 0:
        raise InfeasibleError(
            f"level change ran out of climb capability before reaching "
            f"{h1:.0f} m (stalled at {path.y_end[0]:.0f} m)"
        )

    grid = _sample_grid(x0, path.x_end, sample_dx)
    states = path(grid)
    hs, ws, times = states[:, 0], states[:, 1], states[:, 2]
    gammas = np.array([gamma_at(h, w) for h, w in zip(hs, ws)])
    rs = np.full(len(grid), r0)
    seg = _finalize(model, Phase.LEVEL_CHANGE, grid, hs, ws, gammas, rs, times,
                    feasibility_slack)

    w1 = float(ws[-1])
    x1 = float(grid[-1])
    jumps = (
        ThrustJump(x=x0, h=h0, thrust_before=tw_level * w0,
                   thrust_after=thrust_fn(h0)),
        ThrustJump(x=x1, h=float(hs[-1]), thrust_before=thrust_fn(float(hs[-1])),
                   thrust_after=tw_level * w1),
    )

    # small-change linearization of the fuel integral for comparison
    h_mid = 0.5 * (h0 + float(hs[-1]))
    w_mid = 0.5 * (w0 + w1)
    v_mid = model.speed(r0, h_mid, w_mid)
    approx = model.propulsion.sfc(h_mid) / v_mid * (
        w0 * (float(hs[-1]) - h0) + tw_level * w0 * (x1 - x0)
    )
    return LevelChangeResult(
        segment=seg,
        jumps=jumps,
        gamma_entry=gamma_at(h0, w0),
        exact_fuel=seg.fuel,
        approx_fuel=approx,
        t_over_w_level=tw_level,
    )
