"""Exponential air-density model and airspeed conversions.

The only source of rho(h) in the package. Indicated airspeed is treated
as equivalent airspeed (no compressibility or position correction), so
TAS = IAS * sqrt(rho_sl / rho(h)); below 10000 ft at 250 kt the
compressibility error is small and the model stays closed form.
"""
import math
from dataclasses import dataclass

from .errors import DomainError

# Altitudes below this are rejected to catch unit mistakes (ft passed as m).
MIN_ALTITUDE_M = -500.0


@dataclass(frozen=True)
class AtmosphereModel:
    """rho(h) = rho_sl * exp(-h / scale_height).

    Attributes:
        rho_sl: Sea-level density (kg/m^3).
        scale_height: e-folding altitude of the density profile (m).
    """

    rho_sl: float = 1.225
    scale_height: float = 9042.0

    def __post_init__(self):
        if self.rho_sl <= 0:
            raise DomainError(f"rho_sl must be positive, got {self.rho_sl}")
        if self.scale_height <= 0:
            raise DomainError(
                f"scale_height must be positive, got {self.scale_height}"
            )

    def density(self, h: float) -> float:
        """Air density (kg/m^3) at altitude h (m).

        Raises:
            DomainError: If h < -500 m (nonsense input, usually a unit mix-up).
        """
        if h < MIN_ALTITUDE_M:
            raise DomainError(
                f"altitude {h} m below the {MIN_ALTITUDE_M} m floor; "
                "check for ft/m confusion"
            )
        return self.rho_sl * math.exp(-h / self.scale_height)

    def density_ratio(self, h: float) -> float:
        """rho(h) / rho_sl, the dimensionless density ratio."""
        return self.density(h) / self.rho_sl

    def density_log_derivative(self) -> float:
        """d(ln rho)/dh = -1/scale_height (1/m), exact for this model."""
        return -1.0 / self.scale_height

    def kias_to_tas(self, v_ias: float, h: float) -> float:
        """Convert indicated (equivalent) airspeed to true airspeed.

        Args:
            v_ias: Indicated airspeed (m/s), >= 0.
            h: Altitude (m).

        Returns:
            True airspeed (m/s) = v_ias * sqrt(rho_sl / rho(h)).
        """
        if v_ias < 0:
            raise DomainError(f"indicated airspeed must be >= 0, got {v_ias}")
        return v_ias * math.sqrt(self.rho_sl / self.density(h))
