"""Command-line client of the trajectory service.

The CLI owns configuration loading, unit conversion (ft/nm/kt accepted on
flags, SI in every file), and CSV/JSON rendering; all computation goes
through the service operations, either in process (default) or against a
remote server (--server / $MAXRANGE_SERVER).

Exit codes: 0 success, 1 computation infeasible, 2 invalid configuration
or invalid request.
"""
import argparse
import csv
import json
import math
import os
import sys
from pathlib import Path

import httpx
from pydantic import BaseModel, ValidationError

from . import units
from .config import ENV_CONFIG_PATH, AircraftConfig, emit_config, load_config
from .errors import ConfigError, FlightModelError
from .service import handlers
from .service import schemas as sch

ENV_SERVER_URL = "MAXRANGE_SERVER"

CSV_COLUMNS = ("x_m", "h_m", "V_mps", "gamma_rad", "W_N", "T_N", "T_over_W",
               "R", "CL", "time_s", "phase")

_LENGTH_SUFFIXES = (("nm", units.M_PER_NM), ("km", 1000.0),
                    ("ft", units.M_PER_FT), ("m", 1.0))
_SPEED_SUFFIXES = (("kt", units.MPS_PER_KT), ("mps", 1.0))


class CliError(Exception):
    def __init__(self, message: str, exit_code: int):
        super().__init__(message)
        self.exit_code = exit_code


def _parse_suffixed(text: str, suffixes) -> float:
    s = text.strip().lower()
    for suffix, factor in suffixes:
        if s.endswith(suffix):
            return float(s[: -len(suffix)]) * factor
    return float(s)


def parse_length(text: str) -> float:
    """Length flag: bare numbers are meters; nm/km/ft accepted."""
    try:
        return _parse_suffixed(text, _LENGTH_SUFFIXES)
    except ValueError:
        raise CliError(f"cannot parse length {text!r}", 2) from None


def parse_speed(text: str) -> float:
    try:
        return _parse_suffixed(text, _SPEED_SUFFIXES)
    except ValueError:
        raise CliError(f"cannot parse speed {text!r}", 2) from None


def _parse_range(text: str, what: str) -> tuple[float, float]:
    try:
        a, b = text.split(":")
        return float(a), float(b)
    except ValueError:
        raise CliError(f"cannot parse {what} range {text!r} (want a:b)", 2) from None


def _parse_sweep(text: str) -> list[float]:
    """Sweep spec 'start:stop:step' in nautical miles."""
    try:
        a, b, step = (float(p) for p in text.split(":"))
    except ValueError:
        raise CliError(f"cannot parse sweep {text!r} (want a:b:step in nm)", 2) from None
    if step <= 0 or b < a:
        raise CliError(f"bad sweep {text!r}", 2)
    out, v = [], a
    while v <= b + 1e-9:
        out.append(v * units.M_PER_NM)
        v += step
    return out


# ---- dispatch (in-process service call or remote HTTP) ----

_REMOTE_PATHS = {
    "optimal_speed": "/v1/optimal-speed",
    "contours": "/v1/contours",
    "three_piece": "/v1/trajectories/three-piece",
    "three_piece_sweep": "/v1/trajectories/three-piece/sweep",
    "two_piece": "/v1/trajectories/two-piece",
    "two_piece_sweep": "/v1/trajectories/two-piece/sweep",
    "full_flight": "/v1/trajectories/full-flight",
    "level_change": "/v1/trajectories/level-change",
    "atc_cruise": "/v1/trajectories/atc-cruise",
    "verify": "/v1/verify",
}

_RESPONSE_TYPES = {
    "optimal_speed": sch.OptimalSpeedResponse,
    "contours": sch.ContoursResponse,
    "three_piece": sch.TrajectoryResponse,
    "three_piece_sweep": sch.SweepResponse,
    "two_piece": sch.TrajectoryResponse,
    "two_piece_sweep": sch.SweepResponse,
    "full_flight": sch.TrajectoryResponse,
    "level_change": sch.TrajectoryResponse,
    "atc_cruise": sch.TrajectoryResponse,
    "verify": sch.VerifyResponse,
}


class Client:
    """Thin dispatcher hiding local-vs-remote from the commands."""

    def __init__(self, server: str | None, config: AircraftConfig | None):
        self.server = server
        self.config = config

    def call(self, op: str, request: BaseModel) -> BaseModel:
        if self.server is None:
            try:
                return getattr(handlers, op)(request, self.config)
            except ConfigError as exc:
                raise CliError(str(exc), 2) from exc
            except FlightModelError as exc:
                raise CliError(str(exc), 1) from exc
            except ValidationError as exc:
                raise CliError(str(exc), 2) from exc
        url = self.server.rstrip("/") + _REMOTE_PATHS[op]
        try:
            resp = httpx.post(url, json=request.model_dump(), timeout=600.0)
        except httpx.HTTPError as exc:
            raise CliError(f"server unreachable: {exc}", 1) from exc
        if resp.status_code == 200:
            return _RESPONSE_TYPES[op].model_validate(resp.json())
        if resp.status_code in (400, 422):
            raise CliError(f"request rejected: {resp.text}", 2)
        detail = resp.json().get("error", {}).get("message", resp.text) \
            if resp.headers.get("content-type", "").startswith("application/json") \
            else resp.text
        raise CliError(detail, 1)


def _request_config(args) -> AircraftConfig | None:
    """Config embedded in requests so local and remote behave identically."""
    if args.config is not None:
        return load_config(args.config)
    if os.environ.get(ENV_CONFIG_PATH):
        return load_config(os.environ[ENV_CONFIG_PATH])
    return None


# ---- output rendering ----

def _fmt(v: float) -> str:
    return f"{v:.12g}"


def write_trajectory_csv(table: sch.TrajectoryTable, fh) -> None:
    writer = csv.writer(fh)
    writer.writerow(CSV_COLUMNS)
    for row in zip(table.x_m, table.h_m, table.v_mps, table.gamma_rad,
                   table.w_n, table.thrust_n, table.t_over_w, table.r,
                   table.cl, table.time_s, table.phase):
        writer.writerow([_fmt(v) for v in row[:-1]] + [row[-1]])


def _emit_trajectory(resp: sch.TrajectoryResponse, args) -> None:
    wrote_stdout = False
    if args.csv:
        if args.csv == "-":
            write_trajectory_csv(resp.table, sys.stdout)
            wrote_stdout = True
        else:
            with open(args.csv, "w", newline="") as fh:
                write_trajectory_csv(resp.table, fh)
    summary = resp.summary.model_dump()
    if args.summary:
        if args.summary == "-":
            json.dump(summary, sys.stdout, indent=2)
            sys.stdout.write("\n")
        else:
            Path(args.summary).write_text(json.dumps(summary, indent=2) + "\n")
    elif not wrote_stdout:
        json.dump(summary, sys.stdout, indent=2)
        sys.stdout.write("\n")


def _emit_sweep(resp: sch.SweepResponse, args) -> None:
    out_dir = Path(args.out_dir or ".")
    out_dir.mkdir(parents=True, exist_ok=True)
    family = []
    for member in resp.members:
        nm = member.parameter_m / units.M_PER_NM
        csv_path = out_dir / f"{args.prefix}_{nm:07.2f}nm.csv"
        with open(csv_path, "w", newline="") as fh:
            write_trajectory_csv(member.trajectory.table, fh)
        summary = member.trajectory.summary.model_dump()
        summary["parameter_m"] = member.parameter_m
        summary["csv"] = csv_path.name
        family.append(summary)
    index_path = out_dir / f"{args.prefix}_family.json"
    index_path.write_text(json.dumps(family, indent=2) + "\n")
    print(f"wrote {len(resp.members)} members to {out_dir}")


# ---- commands ----

def cmd_optimal_speed(client: Client, args) -> int:
    if (args.gamma is None) == (args.thrust is None):
        raise CliError("provide exactly one of --gamma or --thrust", 2)
    req = sch.OptimalSpeedRequest(
        config=client.config,
        altitude_m=parse_length(args.alt),
        weight_n=args.weight,
        gamma_rad=math.radians(args.gamma) if args.gamma is not None else None,
        thrust_ratio=args.thrust,
    )
    resp = client.call("optimal_speed", req)
    print(f"{'gamma_deg':>10} {'R':>8} {'V_mps':>8} {'V_kt':>8} "
          f"{'T_over_W':>9} {'CL':>8}")
    print(f"{math.degrees(resp.gamma_rad):>10.4f} {resp.r:>8.4f} "
          f"{resp.v_mps:>8.2f} {resp.v_kt:>8.2f} {resp.thrust_ratio:>9.5f} "
          f"{resp.cl:>8.5f}")
    return 0


def cmd_contours(client: Client, args) -> int:
    g_lo, g_hi = _parse_range(args.gamma_range, "gamma")
    r_lo, r_hi = _parse_range(args.r_range, "r")
    try:
        n_gamma, n_r = (int(p) for p in args.grid.lower().split("x"))
    except ValueError:
        raise CliError(f"cannot parse grid {args.grid!r} (want NxM)", 2) from None
    req = sch.ContoursRequest(
        config=client.config,
        gamma_min_rad=math.radians(g_lo), gamma_max_rad=math.radians(g_hi),
        n_gamma=n_gamma, r_min=r_lo, r_max=r_hi, n_r=n_r,
    )
    resp = client.call("contours", req)
    fh = open(args.out, "w", newline="") if args.out and args.out != "-" \
        else sys.stdout
    try:
        writer = csv.writer(fh)
        writer.writerow(["kind", "gamma_rad", "r", "t_over_w"])
        for i, g in enumerate(resp.gamma_rad):
            for j, r in enumerate(resp.r):
                writer.writerow(["grid", _fmt(g), _fmt(r),
                                 _fmt(resp.t_over_w[i][j])])
        for g, r, tw in zip(resp.curve_gamma_rad, resp.curve_r,
                            resp.curve_t_over_w):
            writer.writerow(["curve", _fmt(g), _fmt(r), _fmt(tw)])
        writer.writerow(["r_ld_line", "", _fmt(resp.r_ld_line), ""])
        writer.writerow(["r_zero_line", "", _fmt(resp.r_zero_line), ""])
    finally:
        if fh is not sys.stdout:
            fh.close()
    return 0


def cmd_three_piece(client: Client, args) -> int:
    if args.sweep:
        req = sch.ThreePieceSweepRequest(
            config=client.config,
            start_altitude_m=parse_length(args.start_alt),
            start_weight_n=args.weight,
            x_transition_m=_parse_sweep(args.sweep),
            faf_altitude_m=parse_length(args.dest_alt) if args.dest_alt else None,
        )
        args.prefix = "three_piece"
        _emit_sweep(client.call("three_piece_sweep", req), args)
        return 0
    if not args.dest_dist:
        raise CliError("--dest-dist is required (or use --sweep)", 2)
    req = sch.ThreePieceRequest(
        config=client.config,
        start_altitude_m=parse_length(args.start_alt),
        start_weight_n=args.weight,
        destination_distance_m=parse_length(args.dest_dist),
        destination_altitude_m=parse_length(args.dest_alt) if args.dest_alt else None,
    )
    _emit_trajectory(client.call("three_piece", req), args)
    return 0


def cmd_two_piece(client: Client, args) -> int:
    if args.sweep:
        req = sch.TwoPieceSweepRequest(
            config=client.config,
            start_weight_n=args.weight,
            start_altitude_m=parse_length(args.start_alt) if args.start_alt else None,
            x_cut_m=_parse_sweep(args.sweep),
        )
        args.prefix = "two_piece"
        _emit_sweep(client.call("two_piece_sweep", req), args)
        return 0
    req = sch.TwoPieceRequest(
        config=client.config,
        start_weight_n=args.weight,
        start_altitude_m=parse_length(args.start_alt) if args.start_alt else None,
        target_ceiling_m=parse_length(args.ceiling) if args.ceiling else None,
    )
    _emit_trajectory(client.call("two_piece", req), args)
    return 0


def _parse_levels(text: str) -> list[sch.AtcLevel]:
    levels = []
    for part in text.split(","):
        try:
            alt, dist = part.split(":")
        except ValueError:
            raise CliError(f"cannot parse level {part!r} (want alt:dist)", 2) from None
        levels.append(sch.AtcLevel(altitude_m=parse_length(alt),
                                   distance_m=parse_length(dist)))
    return levels


def cmd_full_flight(client: Client, args) -> int:
    req = sch.FullFlightRequest(
        config=client.config,
        start_weight_n=args.weight,
        destination_distance_m=parse_length(args.dest_dist),
        destination_altitude_m=parse_length(args.dest_alt) if args.dest_alt else None,
        acceleration_altitude_m=parse_length(args.accel_alt) if args.accel_alt else None,
        restriction_ceiling_m=parse_length(args.ceiling) if args.ceiling else None,
        atc_levels=_parse_levels(args.atc_levels) if args.atc_levels else None,
    )
    _emit_trajectory(client.call("full_flight", req), args)
    return 0


def cmd_level_change(client: Client, args) -> int:
    req = sch.LevelChangeRequest(
        config=client.config,
        altitude_from_m=parse_length(args.from_alt),
        altitude_to_m=parse_length(args.to_alt),
        weight_n=args.weight,
    )
    _emit_trajectory(client.call("level_change", req), args)
    return 0


def cmd_atc_cruise(client: Client, args) -> int:
    req = sch.AtcCruiseRequest(
        config=client.config,
        start_weight_n=args.weight,
        levels=_parse_levels(args.levels),
    )
    _emit_trajectory(client.call("atc_cruise", req), args)
    return 0


def cmd_verify(client: Client, args) -> int:
    req = sch.VerifyRequest(config=client.config, tolerance_scale=args.tol_scale,
                            quick=args.quick)
    resp = client.call("verify", req)
    width = max(len(c.name) for c in resp.checks)
    for c in resp.checks:
        mark = "PASS" if c.passed else "FAIL"
        print(f"{mark}  {c.name:<{width}}  [{c.runtime_s:7.2f}s]  {c.detail}")
    print(f"{'OK' if resp.passed else 'FAILURES PRESENT'}: "
          f"{sum(c.passed for c in resp.checks)}/{len(resp.checks)} checks passed")
    return 0 if resp.passed else 1


def cmd_config(client: Client, args) -> int:
    cfg = client.config or load_config()
    sys.stdout.write(emit_config(cfg))
    return 0


def cmd_serve(client: Client, args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(client.config), host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="maxrange",
        description="Maximum-range quasi-steady flight trajectories",
    )
    p.add_argument("--config", help=f"aircraft config file (or ${ENV_CONFIG_PATH})")
    p.add_argument("--server", help=f"remote service URL (or ${ENV_SERVER_URL}); "
                                    "default is in-process computation")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("optimal-speed",
                        help="range-optimal speed at a flight condition")
    sp.add_argument("--alt", required=True, help="altitude (m, or ft/nm/km suffix)")
    sp.add_argument("--weight", required=True, type=float, help="weight (N)")
    sp.add_argument("--gamma", type=float, help="flight path angle (deg)")
    sp.add_argument("--thrust", type=float, help="thrust-to-weight ratio")
    sp.set_defaults(fn=cmd_optimal_speed)

    sp = sub.add_parser("contours", help="thrust-ratio contours over (gamma, R)")
    sp.add_argument("--gamma-range", default="-10:15", help="degrees, a:b")
    sp.add_argument("--r-range", default="0.4:8", help="pressure ratio, a:b")
    sp.add_argument("--grid", default="51x77", help="NxM grid")
    sp.add_argument("--out", help="CSV path (default stdout)")
    sp.set_defaults(fn=cmd_contours)

    def _traj_io(sp):
        sp.add_argument("--csv", help="trajectory CSV path ('-' for stdout)")
        sp.add_argument("--summary", help="summary JSON path ('-' for stdout)")

    sp = sub.add_parser("three-piece",
                        help="climb/transition/descent to a destination")
    sp.add_argument("--start-alt", default="10000ft")
    sp.add_argument("--weight", required=True, type=float, help="start weight (N)")
    sp.add_argument("--dest-dist", help="destination distance (m or nm)")
    sp.add_argument("--dest-alt", help="destination altitude (default approach fix)")
    sp.add_argument("--sweep", help="climb cutoffs a:b:step (nm); family output")
    sp.add_argument("--out-dir", help="directory for sweep output")
    _traj_io(sp)
    sp.set_defaults(fn=cmd_three_piece)

    sp = sub.add_parser("two-piece",
                        help="speed-restricted climb to the ceiling")
    sp.add_argument("--weight", required=True, type=float)
    sp.add_argument("--start-alt", help="default: acceleration altitude")
    sp.add_argument("--ceiling", help="default: restriction ceiling")
    sp.add_argument("--sweep", help="cutoffs a:b:step (nm); family output")
    sp.add_argument("--out-dir", help="directory for sweep output")
    _traj_io(sp)
    sp.set_defaults(fn=cmd_two_piece)

    sp = sub.add_parser("full-flight", help="complete flight-plan assembly")
    sp.add_argument("--weight", required=True, type=float)
    sp.add_argument("--dest-dist", required=True)
    sp.add_argument("--dest-alt")
    sp.add_argument("--accel-alt")
    sp.add_argument("--ceiling")
    sp.add_argument("--atc-levels", help="alt:dist,alt:dist,... (ATC variant)")
    _traj_io(sp)
    sp.set_defaults(fn=cmd_full_flight)

    sp = sub.add_parser("level-change", help="constant-R flight level change")
    sp.add_argument("--from-alt", required=True)
    sp.add_argument("--to-alt", required=True)
    sp.add_argument("--weight", required=True, type=float)
    _traj_io(sp)
    sp.set_defaults(fn=cmd_level_change)

    sp = sub.add_parser("atc-cruise", help="level cruises joined by level changes")
    sp.add_argument("--weight", required=True, type=float)
    sp.add_argument("--levels", required=True, help="alt:dist,alt:dist,...")
    _traj_io(sp)
    sp.set_defaults(fn=cmd_atc_cruise)

    sp = sub.add_parser("verify", help="run the cross-check suite")
    sp.add_argument("--quick", action="store_true",
                    help="fast closed-form checks only")
    sp.add_argument("--tol-scale", type=float, default=1.0,
                    help="scale check and integrator tolerances")
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("config", help="print the active configuration (canonical JSON)")
    sp.set_defaults(fn=cmd_config)

    sp = sub.add_parser("serve", help="run the HTTP service")
    sp.add_argument("--host", default="127.0.0.1")
    sp.add_argument("--port", type=int, default=8000)
    sp.set_defaults(fn=cmd_serve)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    server = args.server or os.environ.get(ENV_SERVER_URL)
    try:
        config = _request_config(args)
        client = Client(server, config)
        return args.fn(client, args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except FlightModelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
