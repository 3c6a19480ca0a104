"""Altitude-dependent thrust and specific fuel consumption.

Power laws of the density ratio sigma = rho(h)/rho_sl:

    T_max(h)  = P * t_max_sl * sigma^x_T
    T_idle(h) = idle_fraction * t_max_sl * sigma^x_T
    C(h)      = c_sl * sigma^x_C

This family is exactly what the constant-climb-angle analysis needs: with
an exponential atmosphere, -T'/(sqrt(T) C sqrt(rho)) is a pure power of
sigma with exponent x_T/2 - x_C - 1/2, so it is altitude-independent
whenever x_T = 2 x_C + 1 (the classic turbojet T ~ rho, C constant is the
member (1, 0); the shipped sample config uses (2, 0.5)).
"""
import math
from dataclasses import dataclass, field

from .atmosphere import AtmosphereModel
from .errors import DomainError


@dataclass(frozen=True)
class PropulsionModel:
    """Thrust/SFC power laws tied to an atmosphere model.

    Attributes:
        t_max_sl: Unthrottled maximum continuous thrust at sea level (N).
        idle_fraction: T_idle / t_max_sl at any altitude, in (0, 1).
        thrust_exponent: x_T, thrust power of the density ratio.
        c_sl: Specific fuel consumption at sea level (1/s).
        sfc_exponent: x_C, SFC power of the density ratio.
        power_setting: Continuous power setting P in (0, 1], scales max
            thrust only (idle is a hardware floor, independent of P).
    """

    t_max_sl: float
    idle_fraction: float
    thrust_exponent: float
    c_sl: float
    sfc_exponent: float
    power_setting: float = 1.0
    atmosphere: AtmosphereModel = field(default_factory=AtmosphereModel)

    def __post_init__(self):
        if self.t_max_sl <= 0:
            raise DomainError(f"t_max_sl must be positive, got {self.t_max_sl}")
        if not 0.0 < self.idle_fraction < 1.0:
            raise DomainError(
                f"idle_fraction must be in (0, 1), got {self.idle_fraction}"
            )
        if self.c_sl <= 0:
            raise DomainError(f"c_sl must be positive, got {self.c_sl}")
        if not 0.0 < self.power_setting <= 1.0:
            raise DomainError(
                f"power_setting must be in (0, 1], got {self.power_setting}"
            )
        if self.idle_fraction >= self.power_setting:
            raise DomainError(
                "idle_fraction must stay below power_setting so that "
                "T_idle(h) < T_max(h) at every altitude"
            )

    def max_thrust(self, h: float) -> float:
        """Maximum continuous thrust (N) at altitude h (m)."""
        sigma = self.atmosphere.density_ratio(h)
        return self.power_setting * self.t_max_sl * sigma**self.thrust_exponent

    def idle_thrust(self, h: float) -> float:
        """Idle thrust (N) at altitude h (m); nonzero by construction."""
        sigma = self.atmosphere.density_ratio(h)
        return self.idle_fraction * self.t_max_sl * sigma**self.thrust_exponent

    def sfc(self, h: float) -> float:
        """Specific fuel consumption (1/s) at altitude h (m)."""
        sigma = self.atmosphere.density_ratio(h)
        return self.c_sl * sigma**self.sfc_exponent

    def max_thrust_slope(self, h: float) -> float:
        """dT_max/dh (N/m), exact: the power law gives T' = -x_T T / H."""
        return -self.thrust_exponent / self.atmosphere.scale_height * self.max_thrust(h)

    def design_parameter(self, h: float) -> float:
        """-T_max'(h) / (sqrt(T_max(h)) * C(h) * sqrt(rho(h))), in meters.

        Couples thrust lapse, consumption, and atmosphere into the single
        number that fixes the stationary climb angle of prescribed-thrust
        optimal climbs. Constant in h exactly when x_T = 2 x_C + 1.
        """
        t = self.max_thrust(h)
        return -self.max_thrust_slope(h) / (
            math.sqrt(t) * self.sfc(h) * math.sqrt(self.atmosphere.density(h))
        )

    def design_parameter_is_constant(self, *, rel_tol: float = 1e-9) -> bool:
        """True when the design parameter is altitude-independent."""
        d0 = self.design_parameter(0.0)
        d1 = self.design_parameter(12000.0)
        return abs(d1 - d0) <= rel_tol * max(abs(d0), abs(d1))
