"""Exception hierarchy shared by all maxrange modules."""


class FlightModelError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(FlightModelError):
    """Aircraft configuration file is missing, malformed, or inconsistent."""


class DomainError(FlightModelError, ValueError):
    """An operation was called with inputs outside its mathematical domain."""


class InfeasibleError(FlightModelError):
    """The requested flight condition is physically unreachable.

    Examples: thrust insufficient for the requested pressure ratio,
    destination outside the achievable range interval, flight level
    change impossible at the current weight.
    """


class IntegrationError(FlightModelError):
    """Numerical integration failed (step underflow or non-finite state).

    Carries the last good state so callers can diagnose where the
    trajectory broke down.
    """

    def __init__(self, message: str, x: float | None = None, state=None):
        super().__init__(message)
        self.x = x
        self.state = state


class CertificationError(FlightModelError):
    """A derivative evaluator failed its finite-difference self-check."""
