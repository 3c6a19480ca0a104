"""The invariant physical description of one aircraft plus its environment."""
import math
from dataclasses import dataclass

from . import aero, units
from .aero import AeroState, DragPolar
from .atmosphere import AtmosphereModel
from .errors import DomainError
from .propulsion import PropulsionModel


@dataclass(frozen=True)
class OperationalLimits:
    """Regulatory/procedural altitudes and speeds (SI internally)."""

    speed_restriction_kias: float = 250.0
    restriction_ceiling: float = 10000.0 * units.M_PER_FT
    acceleration_altitude: float = 1500.0 * units.M_PER_FT
    final_approach_fix: float = 3000.0 * units.M_PER_FT

    def __post_init__(self):
        if self.speed_restriction_kias <= 0:
            raise DomainError("speed restriction must be positive")
        if not (
            self.acceleration_altitude
            < self.restriction_ceiling
        ):
            raise DomainError(
                "acceleration altitude must lie below the restriction ceiling"
            )


@dataclass(frozen=True)
class AircraftModel:
    """Wing, drag polar, stall floor, propulsion, atmosphere, and limits."""

    name: str
    wing_area: float
    polar: DragPolar
    r_stall: float
    atmosphere: AtmosphereModel
    propulsion: PropulsionModel
    limits: OperationalLimits

    def __post_init__(self):
        if self.wing_area <= 0:
            raise DomainError(f"wing area must be positive, got {self.wing_area}")
        if self.r_stall <= 0:
            raise DomainError(f"r_stall must be positive, got {self.r_stall}")

    # ---- conveniences that close over S, atmosphere, and the stall floor ----

    def pressure_ratio(self, v: float, h: float, w: float) -> float:
        return aero.pressure_ratio(v, h, w, self.wing_area, self.atmosphere)

    def speed(self, r: float, h: float, w: float) -> float:
        return aero.speed_from_r(r, h, w, self.wing_area, self.atmosphere)

    def stall_speed(self, w: float, h: float) -> float:
        return aero.stall_speed(w, h, self.wing_area, self.r_stall, self.atmosphere)

    def state_at(self, r: float, gamma: float, h: float, w: float) -> AeroState:
        """Full AeroState including true airspeed."""
        partial = self.polar.state_from_r(r, gamma)
        return AeroState(
            r=partial.r,
            gamma=partial.gamma,
            cl=partial.cl,
            cd=partial.cd,
            lift_over_w=partial.lift_over_w,
            drag_over_w=partial.drag_over_w,
            v=self.speed(r, h, w),
        )

    def restriction_tas(self, h: float) -> float:
        """True airspeed of the low-altitude IAS restriction at altitude h."""
        v_ias = units.kt_to_mps(self.limits.speed_restriction_kias)
        return self.atmosphere.kias_to_tas(v_ias, h)

    def restriction_dynamic_pressure_area(self, h: float) -> float:
        """U(h) = 1/2 rho(h) V_restriction(h)^2 S (N).

        With the equivalent-airspeed conversion this is altitude-independent,
        but callers should not rely on that.
        """
        v = self.restriction_tas(h)
        return 0.5 * self.atmosphere.density(h) * v * v * self.wing_area

    def glide_angle(self) -> float:
        """Engine-out glide angle: atan(-2 sqrt(k cd0)), the zero of tau."""
        return math.atan(-2.0 * math.sqrt(self.polar.k * self.polar.cd0))
