"""Pressure-ratio assignment strategies for flight-plan integration."""
from dataclasses import dataclass
from typing import Union

from .aero import DragPolar
from .errors import DomainError


@dataclass(frozen=True)
class OptimalRange:
    """Range-optimal pressure ratio r_gamma(gamma) at each sample."""


@dataclass(frozen=True)
class MaxLiftDrag:
    """Maximum lift-to-drag pressure ratio r_ld(gamma) at each sample."""


@dataclass(frozen=True)
class FixedR:
    """A constant prescribed pressure ratio."""

    value: float

    def __post_init__(self):
        if self.value <= 0:
            raise DomainError(f"fixed pressure ratio must be positive, got {self.value}")


RStrategy = Union[OptimalRange, MaxLiftDrag, FixedR]


def strategy_r(strategy: RStrategy, polar: DragPolar, gamma: float) -> float:
    """Resolve a strategy to a pressure ratio via the closed forms."""
    if isinstance(strategy, FixedR):
        return strategy.value
    if isinstance(strategy, MaxLiftDrag):
        return polar.r_ld(gamma)
    if isinstance(strategy, OptimalRange):
        return polar.r_gamma(gamma)
    raise DomainError(f"unknown pressure-ratio strategy {strategy!r}")
