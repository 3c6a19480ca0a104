"""FastAPI wiring of the trajectory service."""
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..config import AircraftConfig, default_config, load_config
from ..errors import (
    ConfigError,
    DomainError,
    InfeasibleError,
    IntegrationError,
)
from . import handlers, schemas as sch


def create_app(config: AircraftConfig | None = None) -> FastAPI:
    """Build the service around a default aircraft configuration.

    Requests may override the configuration per call; `config` (or the
    file named by $MAXRANGE_CONFIG, or the built-in sample) is the
    fallback.
    """
    fallback = config or load_config()
    app = FastAPI(title="maxrange trajectory service", version="0.1.0")

    @app.exception_handler(ConfigError)
    async def _config_error(request: Request, exc: ConfigError):
        return JSONResponse(status_code=400,
                            content={"error": {"kind": "config",
                                               "message": str(exc)}})

    @app.exception_handler(DomainError)
    async def _domain_error(request: Request, exc: DomainError):
        return JSONResponse(status_code=409,
                            content={"error": {"kind": "infeasible",
                                               "message": str(exc)}})

    @app.exception_handler(InfeasibleError)
    async def _infeasible_error(request: Request, exc: InfeasibleError):
        return JSONResponse(status_code=409,
                            content={"error": {"kind": "infeasible",
                                               "message": str(exc)}})

    @app.exception_handler(IntegrationError)
    async def _integration_error(request: Request, exc: IntegrationError):
        return JSONResponse(status_code=409,
                            content={"error": {"kind": "integration",
                                               "message": str(exc)}})

    @app.get("/health")
    def health():
        return {"status": "ok", "aircraft": fallback.aircraft.name}

    @app.get("/v1/config", response_model=AircraftConfig)
    def active_config():
        return fallback

    @app.post("/v1/optimal-speed", response_model=sch.OptimalSpeedResponse)
    def optimal_speed(req: sch.OptimalSpeedRequest):
        return handlers.optimal_speed(req, fallback)

    @app.post("/v1/contours", response_model=sch.ContoursResponse)
    def contours(req: sch.ContoursRequest):
        return handlers.contours(req, fallback)

    @app.post("/v1/trajectories/three-piece",
              response_model=sch.TrajectoryResponse)
    def three_piece(req: sch.ThreePieceRequest):
        return handlers.three_piece(req, fallback)

    @app.post("/v1/trajectories/three-piece/sweep",
              response_model=sch.SweepResponse)
    def three_piece_sweep(req: sch.ThreePieceSweepRequest):
        return handlers.three_piece_sweep(req, fallback)

    @app.post("/v1/trajectories/two-piece", response_model=sch.TrajectoryResponse)
    def two_piece(req: sch.TwoPieceRequest):
        return handlers.two_piece(req, fallback)

    @app.post("/v1/trajectories/two-piece/sweep", response_model=sch.SweepResponse)
    def two_piece_sweep(req: sch.TwoPieceSweepRequest):
        return handlers.two_piece_sweep(req, fallback)

    @app.post("/v1/trajectories/full-flight", response_model=sch.TrajectoryResponse)
    def full_flight(req: sch.FullFlightRequest):
        return handlers.full_flight(req, fallback)

    @app.post("/v1/trajectories/level-change", response_model=sch.TrajectoryResponse)
    def level_change(req: sch.LevelChangeRequest):
        return handlers.level_change(req, fallback)

    @app.post("/v1/trajectories/atc-cruise", response_model=sch.TrajectoryResponse)
    def atc_cruise(req: sch.AtcCruiseRequest):
        return handlers.atc_cruise(req, fallback)

    @app.post("/v1/verify", response_model=sch.VerifyResponse)
    def verify(req: sch.VerifyRequest):
        return handlers.verify(req, fallback)

    return app
