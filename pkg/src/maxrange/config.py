"""Aircraft configuration: file schema, validation, and model assembly.

The config file is plain JSON with four sections; units are embedded in
the key names (ft for procedural altitudes, SI everywhere else) so a
misplaced unit is visible at the call site. Loading re-validates every
positivity and consistency constraint of the owning modules, and
`emit_config(load_config(p))` round-trips to the identical document.
"""
import json
import os
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from . import units
from .aero import DragPolar
from .atmosphere import AtmosphereModel
from .errors import ConfigError
from .model import AircraftModel, OperationalLimits
from .propulsion import PropulsionModel

ENV_CONFIG_PATH = "MAXRANGE_CONFIG"


class AircraftSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str = "SBJ-like"
    wing_area_m2: float = Field(gt=0)
    cd0: float = Field(gt=0)
    k: float = Field(gt=0)
    r_stall: float = Field(gt=0)

    @model_validator(mode="after")
    def _polar_invariant(self):
        if 12.0 * self.k * self.cd0 >= 1.0:
            raise ValueError("12 * k * cd0 must stay below 1")
        return self


class PropulsionSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    t_max_sl_N: float = Field(gt=0)
    idle_fraction: float = Field(gt=0, lt=1)
    thrust_exponent: float
    c_sl_per_s: float = Field(gt=0)
    sfc_exponent: float
    power_setting: float = Field(gt=0, le=1)

    @model_validator(mode="after")
    def _idle_below_power(self):
        if self.idle_fraction >= self.power_setting:
            raise ValueError("idle_fraction must stay below power_setting")
        return self


class AtmosphereSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    rho_sl: float = Field(default=1.225, gt=0)
    scale_height_m: float = Field(default=9042.0, gt=0)


class LimitsSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    speed_restriction_kias: float = Field(default=250.0, gt=0)
    restriction_ceiling_ft: float = Field(default=10000.0, gt=0)
    acceleration_altitude_ft: float = Field(default=1500.0, gt=0)
    final_approach_fix_ft: float = Field(default=3000.0, gt=0)

    @model_validator(mode="after")
    def _ordering(self):
        if self.acceleration_altitude_ft >= self.restriction_ceiling_ft:
            raise ValueError(
                "acceleration altitude must lie below the restriction ceiling"
            )
        return self


class AircraftConfig(BaseModel):
    """Validated content of one aircraft configuration file."""

    model_config = ConfigDict(extra="forbid")

    aircraft: AircraftSection
    propulsion: PropulsionSection
    atmosphere: AtmosphereSection = AtmosphereSection()
    limits: LimitsSection = LimitsSection()


def default_config() -> AircraftConfig:
    """The shipped SBJ-like sample parameterization.

    The drag polar (cd0 0.024, k 0.073, stall floor 0.8) and the wing area
    are the published SBJ values; the propulsion constants are plausible
    inputs chosen from the altitude-canceling family x_T = 2 x_C + 1, not
    published data.
    """
    return AircraftConfig(
        aircraft=AircraftSection(
            name="SBJ-like sample",
            wing_area_m2=21.6,
            cd0=0.024,
            k=0.073,
            r_stall=0.8,
        ),
        propulsion=PropulsionSection(
            t_max_sl_N=18000.0,
            idle_fraction=0.05,
            thrust_exponent=1.5,
            c_sl_per_s=2.2e-4,
            sfc_exponent=0.25,
            power_setting=0.98,
        ),
        atmosphere=AtmosphereSection(),
        limits=LimitsSection(),
    )


def loads_config(text: str) -> AircraftConfig:
    """Parse and validate a config document from a JSON string."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    try:
        return AircraftConfig.model_validate(payload)
    except ValidationError as exc:
        raise ConfigError(f"config failed validation: {exc}") from exc


def load_config(path: str | Path | None = None) -> AircraftConfig:
    """Load a config file; fall back to $MAXRANGE_CONFIG, then the default.

    Raises:
        ConfigError: On a missing file, malformed JSON, or failed validation.
    """
    if path is None:
        path = os.environ.get(ENV_CONFIG_PATH)
    if path is None:
        return default_config()
    p = Path(path)
    if not p.exists():
        raise ConfigError(f"config file not found: {p}")
    return loads_config(p.read_text())


def emit_config(cfg: AircraftConfig) -> str:
    """Canonical JSON rendering; load(emit(load(p))) == load(p)."""
    return json.dumps(cfg.model_dump(), indent=2) + "\n"


def build_model(cfg: AircraftConfig) -> AircraftModel:
    """Assemble the immutable computation model from a validated config."""
    atmosphere = AtmosphereModel(
        rho_sl=cfg.atmosphere.rho_sl,
        scale_height=cfg.atmosphere.scale_height_m,
    )
    propulsion = PropulsionModel(
        t_max_sl=cfg.propulsion.t_max_sl_N,
        idle_fraction=cfg.propulsion.idle_fraction,
        thrust_exponent=cfg.propulsion.thrust_exponent,
        c_sl=cfg.propulsion.c_sl_per_s,
        sfc_exponent=cfg.propulsion.sfc_exponent,
        power_setting=cfg.propulsion.power_setting,
        atmosphere=atmosphere,
    )
    limits = OperationalLimits(
        speed_restriction_kias=cfg.limits.speed_restriction_kias,
        restriction_ceiling=units.ft_to_m(cfg.limits.restriction_ceiling_ft),
        acceleration_altitude=units.ft_to_m(cfg.limits.acceleration_altitude_ft),
        final_approach_fix=units.ft_to_m(cfg.limits.final_approach_fix_ft),
    )
    return AircraftModel(
        name=cfg.aircraft.name,
        wing_area=cfg.aircraft.wing_area_m2,
        polar=DragPolar(cd0=cfg.aircraft.cd0, k=cfg.aircraft.k),
        r_stall=cfg.aircraft.r_stall,
        atmosphere=atmosphere,
        propulsion=propulsion,
        limits=limits,
    )
