"""Closed-form quasi-steady flight algebra.

Everything here reduces to the dimensionless pressure ratio

    R = (1/2 rho V^2) / (W/S),

dynamic pressure over wing pressure. Given R and the flight path angle
gamma, the force balance of quasi-steady flight fixes every other
coefficient:

    C_L = cos(gamma) / R
    C_D = cd0 + k C_L^2
    L/W = cos(gamma)
    D/W = cd0 R + k cos^2(gamma) / R
    T/W = cd0 R + k cos^2(gamma) / R + sin(gamma)

and V^2 = 2 R W / (rho S) recovers speed once weight, altitude, and wing
area are known. The instantaneous range optimum, its inversions, and the
minimum-thrust relations are all closed forms in (R, gamma) and the drag
polar alone; weight and altitude never enter.

Angles are radians everywhere; degrees exist only at the CLI boundary.
"""
import math
from dataclasses import dataclass

from .atmosphere import AtmosphereModel
from .errors import DomainError, InfeasibleError

_MAX_GAMMA = math.pi / 2


def _check_gamma(gamma: float) -> None:
    if not abs(gamma) < _MAX_GAMMA:
        raise DomainError(f"flight path angle {gamma} rad outside (-pi/2, pi/2)")


@dataclass(frozen=True)
class DragPolar:
    """Quadratic drag polar C_D = cd0 + k * C_L^2.

    Invariant 12*k*cd0 < 1 keeps the thrust-inversion radicand positive on
    the whole physical range (it holds comfortably for transport-category
    polars; the shipped sample uses cd0=0.024, k=0.073).
    """

    cd0: float
    k: float

    def __post_init__(self):
        if self.cd0 <= 0:
            raise DomainError(f"cd0 must be positive, got {self.cd0}")
        if self.k <= 0:
            raise DomainError(f"k must be positive, got {self.k}")
        if 12.0 * self.k * self.cd0 >= 1.0:
            raise DomainError(
                f"drag polar too draggy: 12*k*cd0 = {12 * self.k * self.cd0:.4f} "
                ">= 1 breaks the inversion sign analysis"
            )

    # ---- basic polar relations ----

    def cd(self, cl: float) -> float:
        """Drag coefficient at lift coefficient cl."""
        return self.cd0 + self.k * cl * cl

    def thrust_ratio(self, r: float, gamma: float) -> float:
        """T/W required for quasi-steady flight at pressure ratio r, angle gamma."""
        if r <= 0:
            raise DomainError(f"pressure ratio must be positive, got {r}")
        c = math.cos(gamma)
        return self.cd0 * r + self.k * c * c / r + math.sin(gamma)

    def min_thrust_ratio(self, gamma: float) -> float:
        """Smallest T/W over all speeds at fixed gamma: 2 sqrt(k cd0) cos + sin.

        Attained at r_ld(gamma); no quasi-steady state exists below it.
        """
        _check_gamma(gamma)
        return 2.0 * math.sqrt(self.k * self.cd0) * math.cos(gamma) + math.sin(gamma)

    # ---- characteristic pressure ratios ----

    def r_ld(self, gamma: float = 0.0) -> float:
        """Pressure ratio maximizing L/D at angle gamma: sqrt(k/cd0) cos(gamma)."""
        _check_gamma(gamma)
        return math.sqrt(self.k / self.cd0) * math.cos(gamma)

    def r_zero(self) -> float:
        """Maximum-range pressure ratio for level flight: sqrt(3k/cd0)."""
        return math.sqrt(3.0 * self.k / self.cd0)

    def r_gamma(self, gamma: float) -> float:
        """Maximum-range pressure ratio at flight path angle gamma.

        Minimizer of the fuel-per-distance factor
        cd0 sqrt(R) + k cos^2(gamma) R^-1.5 + sin(gamma) R^-0.5 over R;
        the closed form keeps only the positive root. Reduces to r_zero()
        at gamma = 0 and meets r_ld(gamma) where the required thrust is zero.
        """
        _check_gamma(gamma)
        s, c = math.sin(gamma), math.cos(gamma)
        q = math.sqrt(s * s + 12.0 * self.k * self.cd0 * c * c)
        return (s + q) / (2.0 * self.cd0)

    def tau(self, gamma: float) -> float:
        """T/W along the range-optimal speed schedule: thrust_ratio(r_gamma, gamma).

        Strictly increasing on the feasible angle range, which makes it
        invertible (see gamma_from_thrust).
        """
        return self.thrust_ratio(self.r_gamma(gamma), gamma)

    # ---- inversions ----

    def gamma_from_thrust(self, t: float) -> float:
        """Invert tau: the angle whose range-optimal schedule needs T/W = t.

        Args:
            t: Thrust-to-weight ratio, 0 <= t <= 1 (above 1 is rejected as a
               validation error; no aircraft of this class flies there).

        Returns:
            gamma (rad) with tau(gamma) = t. t = 0 gives the engine-out
            glide at maximum L/D, atan(-2 sqrt(k cd0)).
        """
        if t < 0:
            raise DomainError(f"thrust ratio must be >= 0, got {t}")
        if t > 1.0:
            raise DomainError(f"thrust ratio {t} > 1 rejected as unphysical")
        kc = self.k * self.cd0
        radicand = t * t * (1.0 - 12.0 * kc) + 64.0 * kc * kc + 16.0 * kc
        if radicand < 0:  # unreachable while 12*k*cd0 < 1; kept as a guard
            raise DomainError(f"thrust inversion radicand negative for t={t}")
        s = (2.0 * t - math.sqrt(radicand)) / (2.0 * (1.0 + 4.0 * kc))
        if not -1.0 <= s <= 1.0:
            raise DomainError(f"thrust inversion out of range for t={t}")
        return math.asin(s)

    def gamma_from_r(self, r: float) -> float:
        """The angle whose range-optimal pressure ratio equals r.

        Solves r_gamma(gamma) = r; the feasible branch is
        6k sin(gamma) = r - sqrt(r^2 + 36 k^2 - 12 k cd0 r^2).

        Note this is *not* the fixed-speed thrust inversion (see
        gamma_fixed_r_thrust); the two radicands look alike but solve
        different problems.
        """
        if r <= 0:
            raise DomainError(f"pressure ratio must be positive, got {r}")
        radicand = r * r * (1.0 - 12.0 * self.k * self.cd0) + 36.0 * self.k * self.k
        if radicand < 0:
            raise DomainError(f"pressure-ratio inversion radicand negative for r={r}")
        s = (r - math.sqrt(radicand)) / (6.0 * self.k)
        if not -1.0 <= s <= 1.0:
            raise DomainError(
                f"no flight path angle has range-optimal pressure ratio {r}"
            )
        return math.asin(s)

    def gamma_fixed_r_thrust(self, r: float, t: float) -> float:
        """Climb angle at prescribed speed (fixed r) and prescribed thrust.

        Solves thrust_ratio(r, gamma) = t for gamma at fixed r:
        2k sin(gamma) = r - sqrt(r^2 - 4 k r t + 4 k cd0 r^2 + 4 k^2),
        taking the quasi-steady branch (the other root has |sin| > 1).

        Raises:
            InfeasibleError: If the thrust cannot be balanced at this speed
                (radicand negative, i.e. t above the fixed-r maximum).
        """
        if r <= 0:
            raise DomainError(f"pressure ratio must be positive, got {r}")
        radicand = (
            r * r
            - 4.0 * self.k * r * t
            + 4.0 * self.k * self.cd0 * r * r
            + 4.0 * self.k * self.k
        )
        if radicand < 0:
            raise InfeasibleError(
                f"thrust ratio {t:.4f} infeasible at pressure ratio {r:.4f}"
            )
        s = (r - math.sqrt(radicand)) / (2.0 * self.k)
        if not -1.0 <= s <= 1.0:
            raise InfeasibleError(
                f"no quasi-steady angle balances T/W={t:.4f} at r={r:.4f}"
            )
        return math.asin(s)

    def state_from_r(self, r: float, gamma: float) -> "AeroState":
        """All dimensionless flight variables at (r, gamma)."""
        if r <= 0:
            raise DomainError(f"pressure ratio must be positive, got {r}")
        _check_gamma(gamma)
        c = math.cos(gamma)
        cl = c / r
        return AeroState(
            r=r,
            gamma=gamma,
            cl=cl,
            cd=self.cd(cl),
            lift_over_w=c,
            drag_over_w=self.cd0 * r + self.k * c * c / r,
        )


@dataclass(frozen=True)
class AeroState:
    """Dimensionless snapshot of a quasi-steady flight condition.

    v is filled in only when weight, altitude, and wing area are supplied
    (see AircraftModel.state_at); the dimensionless part never needs them.
    """

    r: float
    gamma: float
    cl: float
    cd: float
    lift_over_w: float
    drag_over_w: float
    v: float | None = None


# ---- conversions that need weight, altitude, and wing area ----

def pressure_ratio(
    v: float, h: float, w: float, s: float, atmosphere: AtmosphereModel
) -> float:
    """R = (1/2 rho v^2) / (w/s) for true airspeed v (m/s) at altitude h (m)."""
    if v < 0:
        raise DomainError(f"speed must be >= 0, got {v}")
    if w <= 0:
        raise DomainError(f"weight must be positive, got {w}")
    if s <= 0:
        raise DomainError(f"wing area must be positive, got {s}")
    return 0.5 * atmosphere.density(h) * v * v * s / w


def speed_from_r(
    r: float, h: float, w: float, s: float, atmosphere: AtmosphereModel
) -> float:
    """True airspeed (m/s) with V^2 = 2 r w / (rho(h) s); inverse of pressure_ratio."""
    if r <= 0:
        raise DomainError(f"pressure ratio must be positive, got {r}")
    if w <= 0:
        raise DomainError(f"weight must be positive, got {w}")
    if s <= 0:
        raise DomainError(f"wing area must be positive, got {s}")
    return math.sqrt(2.0 * r * w / (atmosphere.density(h) * s))


def stall_speed(
    w: float, h: float, s: float, r_stall: float, atmosphere: AtmosphereModel
) -> float:
    """Stall speed from the constant stall pressure-ratio floor.

    The stall floor r_stall = 1 / C_L_max is an aircraft constant
    (usually around 0.8); the speed follows from speed_from_r.
    """
    if r_stall <= 0:
        raise DomainError(f"r_stall must be positive, got {r_stall}")
    return speed_from_r(r_stall, h, w, s, atmosphere)
