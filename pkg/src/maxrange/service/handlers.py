"""Service operations: request model in, response model out.

The FastAPI app and the CLI both dispatch through these functions, so
local and remote invocations share one code path. Domain errors propagate
as package exceptions; the app layer maps them to HTTP statuses.
"""
import math

from .. import planner, segments as seg, units
from ..config import AircraftConfig, build_model, default_config
from ..errors import DomainError
from ..model import AircraftModel
from ..planner import Trajectory, top_of_descent
from ..verify import run_verification
from . import schemas as sch


def resolve_model(config: AircraftConfig | None,
                  fallback: AircraftConfig | None = None) -> AircraftModel:
    return build_model(config or fallback or default_config())


def trajectory_response(traj: Trajectory) -> sch.TrajectoryResponse:
    arrays, phases = traj.sample_arrays()
    table = sch.TrajectoryTable(
        x_m=arrays["x"].tolist(),
        h_m=arrays["h"].tolist(),
        v_mps=arrays["v"].tolist(),
        gamma_rad=arrays["gamma"].tolist(),
        w_n=arrays["w"].tolist(),
        thrust_n=arrays["thrust"].tolist(),
        t_over_w=arrays["t_over_w"].tolist(),
        r=arrays["r"].tolist(),
        cl=arrays["cl"].tolist(),
        time_s=arrays["time"].tolist(),
        phase=phases,
    )
    try:
        tod_x, tod_h = top_of_descent(traj)
        tod = sch.TopOfDescentModel(x_m=tod_x, h_m=tod_h)
    except DomainError:
        tod = None
    summary = sch.TrajectorySummary(
        fuel_n=traj.fuel,
        distance_m=traj.distance,
        duration_s=traj.duration,
        top_of_descent=tod,
        segments=[
            sch.SegmentMeta(
                phase=s.phase.value,
                x_start_m=float(s.x[0]),
                x_end_m=float(s.x[-1]),
                fuel_n=s.fuel,
                duration_s=s.duration,
                samples=len(s.x),
                all_feasible=s.all_feasible,
            )
            for s in traj.segments
        ],
        joins=[
            sch.JoinModel(
                index=j.index,
                from_phase=j.from_phase.value,
                to_phase=j.to_phase.value,
                dh_m=j.dh,
                dw_n=j.dw,
                dgamma_rad=j.dgamma,
                dv_mps=j.dv,
                gamma_jump_allowed=j.gamma_jump_allowed,
                v_jump_allowed=j.v_jump_allowed,
                thrust_jump_n=j.thrust_jump,
            )
            for j in traj.joins
        ],
        thrust_jumps=[
            sch.ThrustJumpModel(x_m=j.x, h_m=j.h, thrust_before_n=j.thrust_before,
                                thrust_after_n=j.thrust_after)
            for j in traj.thrust_jumps
        ],
        notes=list(traj.notes),
        shooting=(sch.ShootingModel(parameter_m=traj.shooting.parameter,
                                    residual=traj.shooting.residual,
                                    evaluations=traj.shooting.evaluations)
                  if traj.shooting else None),
    )
    return sch.TrajectoryResponse(table=table, summary=summary)


def optimal_speed(req: sch.OptimalSpeedRequest,
                  fallback: AircraftConfig | None = None) -> sch.OptimalSpeedResponse:
    model = resolve_model(req.config, fallback)
    polar = model.polar
    if req.gamma_rad is not None:
        gamma = req.gamma_rad
    else:
        gamma = polar.gamma_from_thrust(req.thrust_ratio)
    r = polar.r_gamma(gamma)
    state = model.state_at(r, gamma, req.altitude_m, req.weight_n)
    return sch.OptimalSpeedResponse(
        gamma_rad=gamma,
        r=r,
        v_mps=state.v,
        v_kt=units.mps_to_kt(state.v),
        thrust_ratio=polar.tau(gamma),
        cl=state.cl,
        altitude_m=req.altitude_m,
        weight_n=req.weight_n,
    )


def contours(req: sch.ContoursRequest,
             fallback: AircraftConfig | None = None) -> sch.ContoursResponse:
    model = resolve_model(req.config, fallback)
    polar = model.polar
    gammas = [req.gamma_min_rad + i * (req.gamma_max_rad - req.gamma_min_rad)
              / (req.n_gamma - 1) for i in range(req.n_gamma)]
    rs = [req.r_min + j * (req.r_max - req.r_min) / (req.n_r - 1)
          for j in range(req.n_r)]
    grid = [[polar.thrust_ratio(r, g) for r in rs] for g in gammas]
    curve_r = [polar.r_gamma(g) for g in gammas]
    curve_tw = [polar.tau(g) for g in gammas]
    return sch.ContoursResponse(
        gamma_rad=gammas,
        r=rs,
        t_over_w=grid,
        curve_gamma_rad=gammas,
        curve_r=curve_r,
        curve_t_over_w=curve_tw,
        r_ld_line=polar.r_ld(0.0),
        r_zero_line=polar.r_zero(),
    )


def three_piece(req: sch.ThreePieceRequest,
                fallback: AircraftConfig | None = None) -> sch.TrajectoryResponse:
    model = resolve_model(req.config, fallback)
    traj = planner.three_piece(
        model, req.start_altitude_m, req.start_weight_n,
        req.destination_distance_m, req.destination_altitude_m,
        start_x=req.start_x_m,
    )
    return trajectory_response(traj)


def three_piece_sweep(req: sch.ThreePieceSweepRequest,
                      fallback: AircraftConfig | None = None) -> sch.SweepResponse:
    model = resolve_model(req.config, fallback)
    start = planner.max_thrust_start_state(model, req.start_altitude_m,
                                           req.start_weight_n)
    faf = (req.faf_altitude_m if req.faf_altitude_m is not None
           else model.limits.final_approach_fix)
    members = []
    for x_t in req.x_transition_m:
        traj = planner.assemble_three_piece(model, start, x_t, faf)
        members.append(sch.SweepMember(parameter_m=x_t,
                                       trajectory=trajectory_response(traj)))
    return sch.SweepResponse(members=members)


def two_piece(req: sch.TwoPieceRequest,
              fallback: AircraftConfig | None = None) -> sch.TrajectoryResponse:
    model = resolve_model(req.config, fallback)
    traj = planner.two_piece_low_climb(
        model, req.start_weight_n, start_altitude=req.start_altitude_m,
        target_ceiling=req.target_ceiling_m,
    )
    return trajectory_response(traj)


def two_piece_sweep(req: sch.TwoPieceSweepRequest,
                    fallback: AircraftConfig | None = None) -> sch.SweepResponse:
    model = resolve_model(req.config, fallback)
    h0 = (req.start_altitude_m if req.start_altitude_m is not None
          else model.limits.acceleration_altitude)
    members = []
    for x_cut in req.x_cut_m:
        traj = planner.assemble_two_piece(model, h0, req.start_weight_n, x_cut)
        members.append(sch.SweepMember(parameter_m=x_cut,
                                       trajectory=trajectory_response(traj)))
    return sch.SweepResponse(members=members)


def full_flight(req: sch.FullFlightRequest,
                fallback: AircraftConfig | None = None) -> sch.TrajectoryResponse:
    model = resolve_model(req.config, fallback)
    mission = planner.MissionSpec(
        start_weight=req.start_weight_n,
        destination_distance=req.destination_distance_m,
        destination_altitude=req.destination_altitude_m,
        acceleration_altitude=req.acceleration_altitude_m,
        restriction_ceiling=req.restriction_ceiling_m,
        atc_levels=(tuple((lv.altitude_m, lv.distance_m) for lv in req.atc_levels)
                    if req.atc_levels else None),
    )
    return trajectory_response(planner.full_flight(model, mission))


def level_change(req: sch.LevelChangeRequest,
                 fallback: AircraftConfig | None = None) -> sch.TrajectoryResponse:
    model = resolve_model(req.config, fallback)
    res = seg.level_change(model, req.altitude_from_m, req.weight_n,
                           req.altitude_to_m, x0=req.start_x_m)
    traj = planner.assemble(
        [res.segment],
        thrust_jumps=list(res.jumps),
        notes=[
            f"entry angle {math.degrees(res.gamma_entry):.3f} deg",
            f"exact fuel {res.exact_fuel:.2f} N, linearized "
            f"{res.approx_fuel:.2f} N",
        ],
    )
    return trajectory_response(traj)


def atc_cruise(req: sch.AtcCruiseRequest,
               fallback: AircraftConfig | None = None) -> sch.TrajectoryResponse:
    model = resolve_model(req.config, fallback)
    traj = planner.atc_cruise(
        model, req.start_weight_n,
        [(lv.altitude_m, lv.distance_m) for lv in req.levels],
        start_x=req.start_x_m,
    )
    return trajectory_response(traj)


def verify(req: sch.VerifyRequest,
           fallback: AircraftConfig | None = None) -> sch.VerifyResponse:
    model = resolve_model(req.config, fallback)
    results = run_verification(model, tol_scale=req.tolerance_scale,
                               quick=req.quick)
    return sch.VerifyResponse(
        passed=all(r.passed for r in results),
        checks=[sch.CheckModel(name=r.name, passed=r.passed, detail=r.detail,
                               runtime_s=r.runtime_s) for r in results],
    )
