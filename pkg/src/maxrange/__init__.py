"""Maximum-range quasi-steady flight trajectories.

Closed-form instantaneous speed optima over the pressure ratio, two
variational transition problems, thrust-constrained climb/descent
integrators, and shooting assemblies into complete flight plans; exposed
as a library, an HTTP service, and a CLI.
"""
from .aero import AeroState, DragPolar
from .atmosphere import AtmosphereModel
from .config import AircraftConfig, build_model, default_config, load_config
from .errors import (
    CertificationError,
    ConfigError,
    DomainError,
    FlightModelError,
    InfeasibleError,
    IntegrationError,
)
from .model import AircraftModel, OperationalLimits
from .propulsion import PropulsionModel
from .strategies import FixedR, MaxLiftDrag, OptimalRange

__version__ = "0.1.0"

__all__ = [
    "AeroState",
    "AircraftConfig",
    "AircraftModel",
    "AtmosphereModel",
    "CertificationError",
    "ConfigError",
    "DomainError",
    "DragPolar",
    "FixedR",
    "FlightModelError",
    "InfeasibleError",
    "IntegrationError",
    "MaxLiftDrag",
    "OperationalLimits",
    "OptimalRange",
    "PropulsionModel",
    "build_model",
    "default_config",
    "load_config",
    "__version__",
]
