"""Assembly of segments into complete trajectories.

Three assemblies ship:

* three_piece — max-thrust climb, concave transition arc, idle continuous
  descent; a one-dimensional shoot on the climb cutoff distance hits a
  destination (distance, altitude).
* two_piece_low_climb — max-thrust climb at the IAS restriction followed by
  the speed-restricted stationary arc, shot so the level-off lands on the
  restriction ceiling.
* full_flight — acceleration markers plus the two assemblies above, end to
  end from the acceleration altitude to the final approach fix; an
  ATC-level variant replaces the cruise climb with level cruises joined by
  constant-R level changes.

Joins are machine-checked: altitude and weight must be continuous
everywhere; path angle and thrust may jump only at level-change and
acceleration boundaries, true airspeed only inside acceleration segments.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from . import segments as seg
from .errors import DomainError, InfeasibleError
from .model import AircraftModel
from .odekit import root_find
from .segments import (
    AtDistance,
    AtLevelFlight,
    FlightState,
    LevelChangeResult,
    Phase,
    Segment,
    ThrustJump,
    level_plan,
)
from .strategies import FixedR
from .units import M_PER_NM, m_to_nm

# join continuity tolerances (absolute)
_TOL_H = 1e-6     # m
_TOL_W = 1e-6     # N
_TOL_GAMMA = 1e-9  # rad
_TOL_V = 1e-6     # m/s

# jumps are legitimate next to these phases
_GAMMA_JUMP_PHASES = {Phase.LEVEL_CHANGE, Phase.ACCELERATION}
_V_JUMP_PHASES = {Phase.ACCELERATION}

ACCEL_LOW_DISTANCE = 1.0 * M_PER_NM   # acceleration run at the acceleration altitude
ACCEL_HIGH_DISTANCE = 6.0 * M_PER_NM  # acceleration run at the restriction ceiling


@dataclass(frozen=True)
class JoinRecord:
    """Continuity diagnostics between two consecutive segments."""

    index: int
    from_phase: Phase
    to_phase: Phase
    dh: float
    dw: float
    dgamma: float
    dv: float
    gamma_jump_allowed: bool
    v_jump_allowed: bool
    thrust_jump: float


@dataclass(frozen=True)
class ShootingInfo:
    """Outcome of a one-dimensional shooting solve."""

    parameter: float
    residual: float
    evaluations: int


@dataclass
class Trajectory:
    """Ordered segments with join diagnostics and totals."""

    segments: list[Segment]
    joins: list[JoinRecord] = field(default_factory=list)
    thrust_jumps: list[ThrustJump] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    shooting: ShootingInfo | None = None
    fuel: float = field(init=False)
    distance: float = field(init=False)
    duration: float = field(init=False)

    def __post_init__(self):
        if not self.segments:
            raise DomainError("trajectory must contain at least one segment")
        self.fuel = sum(s.fuel for s in self.segments)
        self.distance = float(self.segments[-1].x[-1] - self.segments[0].x[0])
        self.duration = sum(s.duration for s in self.segments)

    @property
    def start(self) -> FlightState:
        return self.segments[0].start

    @property
    def end(self) -> FlightState:
        return self.segments[-1].end

    def sample_arrays(self):
        """Concatenated per-sample arrays over all segments (joins deduplicated)."""
        keys = ("x", "h", "w", "gamma", "r", "v", "thrust", "t_over_w", "cl",
                "time")
        chunks = {k: [] for k in keys}
        phases: list[str] = []
        for i, s in enumerate(self.segments):
            sl = slice(1, None) if (i > 0 and len(s.x) > 1) else slice(None)
            for k in keys:
                chunks[k].append(getattr(s, k)[sl])
            phases.extend([s.phase.value] * len(s.x[sl]))
        arrays = {k: np.concatenate(v) for k, v in chunks.items()}
        return arrays, phases


def assemble(pieces: list[Segment], *, thrust_jumps: list[ThrustJump] | None = None,
             notes: list[str] | None = None,
             shooting: ShootingInfo | None = None) -> Trajectory:
    """Join segments into a Trajectory, enforcing the continuity rules."""
    joins: list[JoinRecord] = []
    for i in range(len(pieces) - 1):
        a, b = pieces[i], pieces[i + 1]
        gamma_ok = a.phase in _GAMMA_JUMP_PHASES or b.phase in _GAMMA_JUMP_PHASES
        v_ok = a.phase in _V_JUMP_PHASES or b.phase in _V_JUMP_PHASES
        rec = JoinRecord(
            index=i,
            from_phase=a.phase,
            to_phase=b.phase,
            dh=float(b.h[0] - a.h[-1]),
            dw=float(b.w[0] - a.w[-1]),
            dgamma=float(b.gamma[0] - a.gamma[-1]),
            dv=float(b.v[0] - a.v[-1]),
            gamma_jump_allowed=gamma_ok,
            v_jump_allowed=v_ok,
            thrust_jump=float(b.thrust[0] - a.thrust[-1]),
        )
        if abs(rec.dh) > _TOL_H or abs(rec.dw) > _TOL_W:
            raise DomainError(
                f"discontinuous join {a.phase.value} -> {b.phase.value}: "
                f"dh={rec.dh:.3g} m, dw={rec.dw:.3g} N"
            )
        if abs(rec.dgamma) > _TOL_GAMMA and not gamma_ok:
            raise DomainError(
                f"path-angle jump {rec.dgamma:.3g} rad at join "
                f"{a.phase.value} -> {b.phase.value} is not permitted"
            )
        if abs(rec.dv) > _TOL_V and not v_ok:
            raise DomainError(
                f"airspeed jump {rec.dv:.3g} m/s at join "
                f"{a.phase.value} -> {b.phase.value} is not permitted"
            )
        joins.append(rec)
    return Trajectory(segments=pieces, joins=joins,
                      thrust_jumps=list(thrust_jumps or []),
                      notes=list(notes or []), shooting=shooting)


def top_of_descent(traj: Trajectory) -> tuple[float, float]:
    """The altitude-maximum point (x, h) of a trajectory.

    Raises:
        DomainError: If the trajectory is altitude-monotone (no interior
            maximum exists).
    """
    arrays, _ = traj.sample_arrays()
    hs, xs = arrays["h"], arrays["x"]
    i = int(np.argmax(hs))
    # prefer the last sample attaining the maximum (plateau: descent start)
    near = np.nonzero(hs >= hs[i] - 1e-9)[0]
    i = int(near[-1])
    if i == 0 or i == len(hs) - 1:
        diffs = np.diff(hs)
        if np.all(diffs <= 1e-12) or np.all(diffs >= -1e-12):
            raise DomainError("monotone trajectory has no top of descent")
    return float(xs[i]), float(hs[i])


def max_thrust_start_state(model: AircraftModel, h: float, w: float,
                           x: float = 0.0) -> FlightState:
    """Flight state of a range-optimal max-thrust climb at (h, w)."""
    gamma = model.polar.gamma_from_thrust(model.propulsion.max_thrust(h) / w)
    return FlightState(x=x, h=h, w=w, gamma=gamma, r=model.polar.r_gamma(gamma))


# ---- three-piece assembly ----

def assemble_three_piece(model: AircraftModel, start: FlightState,
                         x_transition: float, faf_altitude: float, *,
                         t0: float = 0.0, rtol: float = 1e-9,
                         atol: float = 1e-12,
                         sample_dx: float = seg._DEFAULT_SAMPLE_DX) -> Trajectory:
    """Climb to a given cutoff distance, transition, descend to the fix."""
    if x_transition < 0:
        raise DomainError("transition cutoff must be nonnegative")
    climb = seg.climb_prescribed_thrust(
        model, start, model.propulsion.max_thrust,
        AtDistance(start.x + x_transition), t0=t0, rtol=rtol, atol=atol,
        sample_dx=sample_dx,
    )
    trans = seg.el_transition(
        model, climb.end, stop_at_idle=True, t0=float(climb.time[-1]),
        rtol=rtol, atol=atol, sample_dx=sample_dx,
    )
    descent = seg.continuous_descent(
        model, trans.end, faf_altitude, t0=float(trans.time[-1]), rtol=rtol,
        atol=atol, sample_dx=sample_dx,
    )
    return assemble([climb, trans, descent])


def three_piece(model: AircraftModel, start_altitude: float,
                start_weight: float, destination_distance: float,
                destination_altitude: float | None = None, *,
                start_x: float = 0.0, t0: float = 0.0,
                distance_tol: float = 10.0, rtol: float = 1e-9,
                atol: float = 1e-12,
                sample_dx: float = seg._DEFAULT_SAMPLE_DX) -> Trajectory:
    """Range-optimal climb/transition/descent hitting a destination.

    Shoots on the climb cutoff distance so the idle descent reaches the
    destination altitude exactly at the destination distance (within
    `distance_tol` meters, default 10 m, far inside a tenth of a nautical
    mile).

    Raises:
        InfeasibleError: If the destination is closer than the minimum
            three-piece range (reported with the achievable distance).
    """
    faf = (destination_altitude if destination_altitude is not None
           else model.limits.final_approach_fix)
    if destination_distance <= start_x:
        raise DomainError("destination distance must lie ahead of the start")
    start = max_thrust_start_state(model, start_altitude, start_weight, start_x)

    cache: dict[float, Trajectory] = {}
    evals = 0

    def residual(x_t: float) -> float:
        nonlocal evals
        evals += 1
        traj = assemble_three_piece(model, start, x_t, faf, t0=t0, rtol=rtol,
                                    atol=atol, sample_dx=sample_dx)
        cache[x_t] = traj
        return traj.end.x - destination_distance

    r0 = residual(0.0)
    if r0 > distance_tol:
        raise InfeasibleError(
            f"destination {m_to_nm(destination_distance):.1f} nm is closer than "
            f"the minimum three-piece range "
            f"{m_to_nm(cache[0.0].end.x):.1f} nm"
        )
    hi = destination_distance - start_x
    x_star = root_find(residual, 0.0, hi, ftol=distance_tol, xtol=0.5)
    traj = cache.get(x_star) or assemble_three_piece(
        model, start, x_star, faf, t0=t0, rtol=rtol, atol=atol,
        sample_dx=sample_dx)
    traj.shooting = ShootingInfo(parameter=x_star,
                                 residual=traj.end.x - destination_distance,
                                 evaluations=evals)
    return traj


# ---- two-piece speed-restricted climb ----

def assemble_two_piece(model: AircraftModel, start_altitude: float,
                       start_weight: float, x_cut: float, *,
                       start_x: float = 0.0, t0: float = 0.0,
                       rtol: float = 1e-9, atol: float = 1e-12,
                       sample_dx: float = seg._DEFAULT_SAMPLE_DX) -> Trajectory:
    """Max-thrust piece to a cutoff distance, then the stationary arc to level-off."""
    start = FlightState(x=start_x, h=start_altitude, w=start_weight, gamma=0.0,
                        r=model.restriction_dynamic_pressure_area(start_altitude)
                        / start_weight)
    piece1 = seg.speed_restricted_max_thrust(
        model, start, stop=AtDistance(start_x + x_cut), t0=t0, rtol=rtol,
        atol=atol, sample_dx=sample_dx,
    )
    piece2 = seg.speed_restricted_el(
        model, piece1.end, stop_at_level=True, t0=float(piece1.time[-1]),
        rtol=rtol, atol=atol, sample_dx=sample_dx,
    )
    return assemble([piece1, piece2])


def two_piece_low_climb(model: AircraftModel, start_weight: float, *,
                        start_altitude: float | None = None,
                        target_ceiling: float | None = None,
                        start_x: float = 0.0, t0: float = 0.0,
                        altitude_tol: float = 1.0, rtol: float = 1e-9,
                        atol: float = 1e-12,
                        sample_dx: float = seg._DEFAULT_SAMPLE_DX) -> Trajectory:
    """Speed-restricted climb leveling off exactly at the restriction ceiling.

    Shoots on the max-thrust cutoff distance; `altitude_tol` (m) bounds the
    level-off error, default 1 m (well inside 50 ft).

    Raises:
        InfeasibleError: If no cutoff in the search window levels off at
            the ceiling (reports the achievable level-off interval).
    """
    h0 = (start_altitude if start_altitude is not None
          else model.limits.acceleration_altitude)
    target = (target_ceiling if target_ceiling is not None
              else model.limits.restriction_ceiling)

    cache: dict[float, Trajectory] = {}
    evals = 0
    crest = min(target, model.limits.restriction_ceiling)

    def levelled(x_cut: float) -> float:
        nonlocal evals
        evals += 1
        start = FlightState(
            x=start_x, h=h0, w=start_weight, gamma=0.0,
            r=model.restriction_dynamic_pressure_area(h0) / start_weight)
        piece1 = seg.speed_restricted_max_thrust(
            model, start, stop=AtDistance(start_x + x_cut), t0=t0, rtol=rtol,
            atol=atol, sample_dx=sample_dx)
        if piece1.end.h >= crest - 1e-9:
            # already at the ceiling: the leveling arc could only overshoot
            return piece1.end.h - target
        piece2 = seg.speed_restricted_el(
            model, piece1.end, stop_at_level=True, t0=float(piece1.time[-1]),
            rtol=rtol, atol=atol, sample_dx=sample_dx)
        traj = assemble([piece1, piece2])
        cache[x_cut] = traj
        return traj.end.h - target

    lo = 0.2 * M_PER_NM
    r_lo = levelled(lo)
    if r_lo >= 0.0:
        raise InfeasibleError(
            f"even a {m_to_nm(lo):.1f} nm max-thrust piece levels off at "
            f"{cache[lo].end.h:.0f} m, above the target {target:.0f} m"
        )
    hi = 4.0 * M_PER_NM
    r_hi = levelled(hi)
    while r_hi < 0.0:
        hi *= 1.8
        if hi > 150.0 * M_PER_NM:
            reached = [t.end.h for t in cache.values()]
            raise InfeasibleError(
                "no max-thrust cutoff reaches the ceiling: achievable "
                f"level-off interval is [{min(reached):.0f}, "
                f"{max(reached):.0f}] m"
            )
        r_hi = levelled(hi)

    x_star = root_find(levelled, lo, hi, ftol=altitude_tol, xtol=0.05)
    traj = cache.get(x_star) or assemble_two_piece(
        model, h0, start_weight, x_star, start_x=start_x, t0=t0, rtol=rtol,
        atol=atol, sample_dx=sample_dx)
    traj.shooting = ShootingInfo(parameter=x_star,
                                 residual=traj.end.h - target,
                                 evaluations=evals)
    return traj


# ---- acceleration markers ----

def acceleration_segment(model: AircraftModel, x0: float, h: float, w0: float,
                         distance: float, v_in: float, v_out: float, *,
                         t0: float = 0.0,
                         fuel: float | None = None) -> Segment:
    """Fixed-distance stand-in for a non-quasi-steady acceleration run.

    Fuel defaults to a level run at maximum thrust over the distance at the
    mean of entry and exit speeds; the speed change happens inside the
    segment, so joins on both sides stay continuous in V.
    """
    if distance <= 0:
        raise DomainError("acceleration distance must be positive")
    prop = model.propulsion
    v_mean = 0.5 * (v_in + v_out)
    dt = distance / v_mean
    burn = fuel if fuel is not None else prop.sfc(h) * prop.max_thrust(h) * dt
    if burn >= w0:
        raise InfeasibleError("acceleration would exhaust the aircraft weight")
    w1 = w0 - burn
    xs = np.array([x0, x0 + distance])
    ws = np.array([w0, w1])
    vs = np.array([v_in, v_out])
    rho = np.array([model.atmosphere.density(h)] * 2)
    rs = 0.5 * rho * vs**2 * model.wing_area / ws
    gammas = np.zeros(2)
    t_max = prop.max_thrust(h)
    t_over_w = np.array([t_max / w0, t_max / w1])
    cl = np.cos(gammas) / rs
    return Segment(
        phase=Phase.ACCELERATION, x=xs, h=np.array([h, h]), w=ws,
        gamma=gammas, r=rs, v=vs, thrust=np.array([t_max, t_max]),
        t_over_w=t_over_w, cl=cl, time=np.array([t0, t0 + dt]),
        feasible=np.array([True, True]),
    )


# ---- mission assembly ----

@dataclass(frozen=True)
class MissionSpec:
    """Inputs of a complete flight-plan computation (SI units).

    atc_levels, when given, replaces the free cruise climb by a sequence of
    (altitude m, distance m) level cruises joined by constant-R level
    changes; the last level's distance is then adjusted by shooting so the
    final descent still hits the destination.
    """

    start_weight: float
    destination_distance: float
    destination_altitude: float | None = None
    acceleration_altitude: float | None = None
    restriction_ceiling: float | None = None
    atc_levels: tuple[tuple[float, float], ...] | None = None

    def __post_init__(self):
        if self.start_weight <= 0:
            raise DomainError("start weight must be positive")
        if self.destination_distance <= 0:
            raise DomainError("destination distance must be positive")


def full_flight(model: AircraftModel, mission: MissionSpec) -> Trajectory:
    """The complete phase list from acceleration altitude to the approach fix.

    Phases: acceleration to the IAS restriction (fixed 1 nm) -> two-piece
    restricted climb to the ceiling -> acceleration to the cruise-climb
    speed (fixed 6 nm) -> three-piece climb/transition/descent shot to the
    destination. A note reports whether a deceleration would be needed
    where the final descent crosses the restriction ceiling (it normally
    is not: the descent arrives below the restriction speed).
    """
    h_acc = (mission.acceleration_altitude if mission.acceleration_altitude
             is not None else model.limits.acceleration_altitude)
    ceiling = (mission.restriction_ceiling if mission.restriction_ceiling
               is not None else model.limits.restriction_ceiling)
    faf = (mission.destination_altitude if mission.destination_altitude
           is not None else model.limits.final_approach_fix)
    w0 = mission.start_weight

    # 1: accelerate to the restricted-climb speed at the acceleration altitude
    v_restr = model.restriction_tas(h_acc)
    v_initial = 1.2 * model.stall_speed(w0, h_acc)  # clean climb-out speed
    marker1 = acceleration_segment(model, 0.0, h_acc, w0, ACCEL_LOW_DISTANCE,
                                   v_initial, v_restr)

    # 2-3: restricted two-piece climb to the ceiling
    low_climb = two_piece_low_climb(
        model, marker1.end.w, start_altitude=h_acc, target_ceiling=ceiling,
        start_x=float(marker1.x[-1]), t0=float(marker1.time[-1]),
    )
    low_top = low_climb.end

    # 4: accelerate at the ceiling to the cruise-climb speed
    climb_state = max_thrust_start_state(model, low_top.h, low_top.w)
    v_climb = model.speed(climb_state.r, low_top.h, low_top.w)
    marker2 = acceleration_segment(
        model, low_top.x, low_top.h, low_top.w, ACCEL_HIGH_DISTANCE,
        model.restriction_tas(low_top.h), v_climb,
        t0=float(low_climb.segments[-1].time[-1]),
    )

    pieces = [marker1] + low_climb.segments + [marker2]
    notes = list(low_climb.notes)
    if low_climb.shooting is not None:
        notes.append(
            f"restricted climb cutoff {m_to_nm(low_climb.shooting.parameter):.2f} nm "
            f"levels off {low_climb.shooting.residual:+.1f} m from the ceiling"
        )
    jumps: list[ThrustJump] = []

    if mission.atc_levels:
        tail, tail_notes, tail_jumps = _atc_tail(model, marker2.end, mission,
                                                 faf, t0=float(marker2.time[-1]))
        pieces += tail
        notes += tail_notes
        jumps += tail_jumps
        shooting = None
    else:
        # 5-8: cruise climb, transition, continuous descent to the fix
        high = three_piece(
            model, marker2.end.h, marker2.end.w, mission.destination_distance,
            faf, start_x=marker2.end.x, t0=float(marker2.time[-1]),
        )
        pieces += high.segments
        shooting = high.shooting

    traj = assemble(pieces, thrust_jumps=jumps, notes=notes, shooting=shooting)
    _note_deceleration(model, traj, ceiling)
    return traj


def _note_deceleration(model: AircraftModel, traj: Trajectory,
                       ceiling: float) -> None:
    """Report the speed at which the final descent crosses the ceiling."""
    descent = next((s for s in reversed(traj.segments)
                    if s.phase is Phase.CONTINUOUS_DESCENT), None)
    if descent is None:
        return
    below = np.nonzero(descent.h <= ceiling)[0]
    if len(below) == 0:
        return
    i = int(below[0])
    v_there = float(descent.v[i])
    v_limit = model.restriction_tas(float(descent.h[i]))
    if v_there < v_limit:
        traj.notes.append(
            f"descent crosses {ceiling:.0f} m at {v_there:.1f} m/s, below the "
            f"restriction ({v_limit:.1f} m/s): no deceleration needed"
        )
    else:
        traj.notes.append(
            f"descent crosses {ceiling:.0f} m at {v_there:.1f} m/s, above the "
            f"restriction ({v_limit:.1f} m/s): deceleration required"
        )


# ---- ATC level cruise ----

def atc_cruise(model: AircraftModel, start_weight: float,
               levels: list[tuple[float, float]], *, start_x: float = 0.0,
               t0: float = 0.0) -> Trajectory:
    """Level cruises at the range-optimal pressure ratio joined by level changes.

    Each (altitude, distance) pair cruises that distance at R = r_zero();
    consecutive levels are connected by constant-R level changes whose
    thrust jumps are recorded. Notes expose the exact against the
    linearized fuel accounting for every change.

    Raises:
        InfeasibleError: Naming the level pair when a change is impossible.
    """
    if not levels:
        raise DomainError("atc_cruise needs at least one (altitude, distance) level")
    r0 = model.polar.r_zero()
    pieces: list[Segment] = []
    jumps: list[ThrustJump] = []
    notes: list[str] = []
    x = start_x
    t = t0
    w = start_weight

    for i, (alt, dist) in enumerate(levels):
        if dist <= 0:
            raise DomainError(f"level {i} distance must be positive")
        cruise = seg.integrate_plan(
            model, level_plan(alt), w, FixedR(r0), (x, x + dist), t0=t,
            phase=Phase.LEVEL_CRUISE,
        )
        pieces.append(cruise)
        x, t, w = float(cruise.x[-1]), float(cruise.time[-1]), float(cruise.w[-1])
        if i + 1 < len(levels):
            next_alt = levels[i + 1][0]
            try:
                change = seg.level_change(model, alt, w, next_alt, x0=x, t0=t)
            except InfeasibleError as exc:
                raise InfeasibleError(
                    f"level change {alt:.0f} m -> {next_alt:.0f} m "
                    f"(levels {i} -> {i + 1}): {exc}"
                ) from exc
            pieces.append(change.segment)
            jumps.extend(change.jumps)
            notes.append(
                f"level change {alt:.0f}->{next_alt:.0f} m: exact fuel "
                f"{change.exact_fuel:.2f} N, linearized "
                f"{change.approx_fuel:.2f} N"
            )
            x = float(change.segment.x[-1])
            t = float(change.segment.time[-1])
            w = float(change.segment.w[-1])
    return assemble(pieces, thrust_jumps=jumps, notes=notes)


def _climb_to_level(model: AircraftModel, start: FlightState, level_alt: float,
                    *, t0: float, altitude_tol: float = 1.0) -> Trajectory:
    """Max-thrust climb plus transition arc leveling off at a target altitude."""
    cache: dict[float, Trajectory] = {}

    def peak(x_cut: float) -> float:
        climb = seg.climb_prescribed_thrust(
            model, start, model.propulsion.max_thrust,
            AtDistance(start.x + x_cut), t0=t0)
        arc = seg.el_transition(model, climb.end, stop=AtLevelFlight(),
                                t0=float(climb.time[-1]))
        cache[x_cut] = assemble([climb, arc])
        return cache[x_cut].end.h - level_alt

    lo = 0.0
    r_lo = peak(lo)
    if r_lo >= 0.0:
        raise InfeasibleError(
            f"cruise level {level_alt:.0f} m below the minimum level-off "
            f"{cache[lo].end.h:.0f} m"
        )
    hi = 50.0 * M_PER_NM
    while peak(hi) < 0.0:
        hi *= 1.8
        if hi > 3000.0 * M_PER_NM:
            raise InfeasibleError(f"cruise level {level_alt:.0f} m unreachable")
    x_star = root_find(peak, lo, hi, ftol=altitude_tol, xtol=0.5)
    return cache.get(x_star) or cache[min(cache, key=lambda k: abs(k - x_star))]


def _atc_tail(model: AircraftModel, start: FlightState,
              mission: MissionSpec, faf: float, *, t0: float):
    """Climb to the first ATC level, cruise the levels, descend to the fix.

    The last level's cruise distance is the shooting parameter that makes
    the final descent arrive at the destination distance.
    """
    levels = list(mission.atc_levels)
    approach = _climb_to_level(model, start, levels[0][0], t0=t0)
    pieces = list(approach.segments)
    state = approach.end
    t = float(approach.segments[-1].time[-1])

    # cruise the shot level at its achieved altitude to keep joins exact;
    # level changes land on the remaining altitudes to event precision
    chained = [(state.h, levels[0][1])] + [list(lv) for lv in levels[1:]]
    fixed: list[Segment] = []
    jumps: list[ThrustJump] = []
    notes: list[str] = []
    if len(chained) > 1:
        body = atc_cruise(model, state.w,
                          [tuple(lv) for lv in chained[:-1]]
                          + [(chained[-1][0], 1.0)],  # placeholder final cruise
                          start_x=state.x, t0=t)
        fixed = body.segments[:-1]
        jumps = list(body.thrust_jumps)
        notes = list(body.notes)
        state = fixed[-1].end
        t = float(fixed[-1].time[-1])
        last_alt = float(state.h)
    else:
        last_alt = float(state.h)
    pieces += fixed

    cache: dict[float, list[Segment]] = {}

    def endpoint(cruise_dist: float) -> float:
        cruise = seg.integrate_plan(
            model, level_plan(last_alt), state.w, FixedR(model.polar.r_zero()),
            (state.x, state.x + cruise_dist), t0=t, phase=Phase.LEVEL_CRUISE)
        leave = FlightState(x=float(cruise.x[-1]), h=last_alt,
                            w=float(cruise.w[-1]), gamma=0.0,
                            r=model.polar.r_zero())
        arc = seg.el_transition(model, leave, stop_at_idle=True,
                                t0=float(cruise.time[-1]))
        descent = seg.continuous_descent(model, arc.end, faf,
                                         t0=float(arc.time[-1]))
        cache[cruise_dist] = [cruise, arc, descent]
        return float(descent.x[-1]) - mission.destination_distance

    lo = 1.0
    if endpoint(lo) > 0.0:
        raise InfeasibleError(
            "destination too close: the ATC cruise tail overshoots it even "
            "with an immediate descent"
        )
    hi = max(2.0, mission.destination_distance - state.x)
    if endpoint(hi) < 0.0:
        raise InfeasibleError("destination beyond reach of the ATC cruise tail")
    d_star = root_find(endpoint, lo, hi, ftol=10.0, xtol=0.5)
    tail = cache.get(d_star) or cache[min(cache, key=lambda k: abs(k - d_star))]
    return pieces + tail, notes, jumps


# ---- stationary climb angle ----

def stationary_climb_angle(model: AircraftModel) -> float:
    """The constant path angle that long prescribed-thrust climbs approach.

    Balances the propulsion design parameter against the climb-side factor
    tau(gamma)^1.5 / (sin(gamma) sqrt(r_gamma(gamma))) * sqrt(S/2); requires
    a propulsion law whose design parameter is altitude-independent.

    Raises:
        DomainError: If the design parameter varies with altitude or no
            root lies in (0.01 deg, 20 deg).
    """
    prop = model.propulsion
    if not prop.design_parameter_is_constant(rel_tol=1e-6):
        raise DomainError(
            "stationary climb angle undefined: the propulsion design "
            "parameter varies with altitude (need x_T = 2 x_C + 1)"
        )
    d = prop.design_parameter(0.0)
    polar = model.polar
    s_half = math.sqrt(model.wing_area / 2.0)

    def f(gamma: float) -> float:
        rhs = (polar.tau(gamma) ** 1.5
               / (math.sin(gamma) * math.sqrt(polar.r_gamma(gamma))) * s_half)
        return d - rhs

    lo, hi = math.radians(0.01), math.radians(20.0)
    return root_find(f, lo, hi, ftol=0.0, xtol=1e-12)
