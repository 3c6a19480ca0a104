"""Request/response models of the trajectory service.

Every request optionally embeds a full aircraft config; when omitted the
service's default configuration applies. All quantities are SI (meters,
newtons, seconds, radians); clients convert at their own boundary.
"""
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..config import AircraftConfig


class OptimalSpeedRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    config: AircraftConfig | None = None
    altitude_m: float
    weight_n: float = Field(gt=0)
    gamma_rad: float | None = None
    thrust_ratio: float | None = None

    @model_validator(mode="after")
    def _exactly_one(self):
        if (self.gamma_rad is None) == (self.thrust_ratio is None):
            raise ValueError("provide exactly one of gamma_rad or thrust_ratio")
        return self


class OptimalSpeedResponse(BaseModel):
    gamma_rad: float
    r: float
    v_mps: float
    v_kt: float
    thrust_ratio: float
    cl: float
    altitude_m: float
    weight_n: float


class ContoursRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    config: AircraftConfig | None = None
    gamma_min_rad: float = -0.17453292519943295  # -10 deg
    gamma_max_rad: float = 0.2617993877991494    # +15 deg
    n_gamma: int = Field(default=51, ge=2, le=2001)
    r_min: float = Field(default=0.4, gt=0)
    r_max: float = 8.0
    n_r: int = Field(default=77, ge=2, le=2001)

    @model_validator(mode="after")
    def _ranges(self):
        if self.gamma_max_rad <= self.gamma_min_rad or self.r_max <= self.r_min:
            raise ValueError("empty contour range")
        return self


class ContoursResponse(BaseModel):
    gamma_rad: list[float]
    r: list[float]
    t_over_w: list[list[float]]  # row per gamma, column per r
    curve_gamma_rad: list[float]
    curve_r: list[float]
    curve_t_over_w: list[float]
    r_ld_line: float
    r_zero_line: float


class TrajectoryTable(BaseModel):
    """Column-oriented trajectory samples (fixed column set)."""

    x_m: list[float]
    h_m: list[float]
    v_mps: list[float]
    gamma_rad: list[float]
    w_n: list[float]
    thrust_n: list[float]
    t_over_w: list[float]
    r: list[float]
    cl: list[float]
    time_s: list[float]
    phase: list[str]


class JoinModel(BaseModel):
    index: int
    from_phase: str
    to_phase: str
    dh_m: float
    dw_n: float
    dgamma_rad: float
    dv_mps: float
    gamma_jump_allowed: bool
    v_jump_allowed: bool
    thrust_jump_n: float


class ThrustJumpModel(BaseModel):
    x_m: float
    h_m: float
    thrust_before_n: float
    thrust_after_n: float


class SegmentMeta(BaseModel):
    phase: str
    x_start_m: float
    x_end_m: float
    fuel_n: float
    duration_s: float
    samples: int
    all_feasible: bool


class TopOfDescentModel(BaseModel):
    x_m: float
    h_m: float


class ShootingModel(BaseModel):
    parameter_m: float
    residual: float
    evaluations: int


class TrajectorySummary(BaseModel):
    fuel_n: float
    distance_m: float
    duration_s: float
    top_of_descent: TopOfDescentModel | None
    segments: list[SegmentMeta]
    joins: list[JoinModel]
    thrust_jumps: list[ThrustJumpModel]
    notes: list[str]
    shooting: ShootingModel | None


class TrajectoryResponse(BaseModel):
    table: TrajectoryTable
    summary: TrajectorySummary


class ThreePieceRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    config: AircraftConfig | None = None
    start_altitude_m: float
    start_weight_n: float = Field(gt=0)
    destination_distance_m: float = Field(gt=0)
    destination_altitude_m: float | None = None
    start_x_m: float = 0.0


class ThreePieceSweepRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    config: AircraftConfig | None = None
    start_altitude_m: float
    start_weight_n: float = Field(gt=0)
    x_transition_m: list[float] = Field(min_length=1, max_length=64)
    faf_altitude_m: float | None = None


class TwoPieceRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    config: AircraftConfig | None = None
    start_weight_n: float = Field(gt=0)
    start_altitude_m: float | None = None
    target_ceiling_m: float | None = None


class TwoPieceSweepRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    config: AircraftConfig | None = None
    start_weight_n: float = Field(gt=0)
    start_altitude_m: float | None = None
    x_cut_m: list[float] = Field(min_length=1, max_length=64)


class SweepMember(BaseModel):
    parameter_m: float
    trajectory: TrajectoryResponse


class SweepResponse(BaseModel):
    members: list[SweepMember]


class AtcLevel(BaseModel):
    altitude_m: float
    distance_m: float = Field(gt=0)


class FullFlightRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    config: AircraftConfig | None = None
    start_weight_n: float = Field(gt=0)
    destination_distance_m: float = Field(gt=0)
    destination_altitude_m: float | None = None
    acceleration_altitude_m: float | None = None
    restriction_ceiling_m: float | None = None
    atc_levels: list[AtcLevel] | None = None


class LevelChangeRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    config: AircraftConfig | None = None
    altitude_from_m: float
    altitude_to_m: float
    weight_n: float = Field(gt=0)
    start_x_m: float = 0.0


class AtcCruiseRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    config: AircraftConfig | None = None
    start_weight_n: float = Field(gt=0)
    levels: list[AtcLevel] = Field(min_length=1, max_length=32)
    start_x_m: float = 0.0


class VerifyRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    config: AircraftConfig | None = None
    tolerance_scale: float = Field(default=1.0, gt=0)
    quick: bool = False


class CheckModel(BaseModel):
    name: str
    passed: bool
    detail: str
    runtime_s: float


class VerifyResponse(BaseModel):
    passed: bool
    checks: list[CheckModel]
