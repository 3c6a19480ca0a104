"""Adaptive explicit Runge-Kutta integration with dense output and events.

A Dormand-Prince 5(4) pair with cubic Hermite interpolation between
accepted steps and event location by bracketing plus secant-accelerated
bisection. Every trajectory-segment integrator in the package is built on
`integrate`; `root_find` also serves the shooting assemblies directly.

All problems here are smooth and nonstiff; stiffness guards exist only to
produce a diagnosable error instead of a silent hang.
"""
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, IntegrationError

# Dormand-Prince 5(4) tableau (FSAL).
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = [
    np.array([]),
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
    np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84]),
]
_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_ERR = np.array(
    [71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40]
)

EVENT_REL_TOL = 1e-10  # |monitor| < EVENT_REL_TOL * monitor scale at the located root


@dataclass(frozen=True)
class EventSpec:
    """Scalar monitor g(x, y); integration stops where g crosses zero.

    direction: +1 triggers only on rising crossings, -1 only on falling,
    0 on any sign change.
    """

    fn: Callable[[float, np.ndarray], float]
    direction: int = 0
    name: str = ""


@dataclass(frozen=True)
class OdeProblem:
    """Definition of one initial-value integration.

    span must be increasing; tolerances control the local error of the
    embedded pair per step.
    """

    rhs: Callable[[float, np.ndarray], np.ndarray]
    y0: Sequence[float]
    span: tuple[float, float]
    rtol: float = 1e-9
    atol: float = 1e-12
    events: tuple[EventSpec, ...] = ()
    max_step: float = math.inf
    first_step: float | None = None
    max_steps: int = 1_000_000

    def __post_init__(self):
        if self.rtol <= 0 or self.atol <= 0:
            raise DomainError("tolerances must be positive")
        if not self.span[1] >= self.span[0]:
            raise DomainError(f"span must be nondecreasing, got {self.span}")
        if self.max_step <= 0:
            raise DomainError("max_step must be positive")


@dataclass
class SolutionPath:
    """Accepted integration nodes with derivative samples for interpolation."""

    xs: np.ndarray  # strictly increasing node abscissae
    ys: np.ndarray  # (n, dim) states
    fs: np.ndarray  # (n, dim) derivatives at the nodes
    terminal: str  # "span_end" | "event" | "point"
    event_index: int | None = None
    event_x: float | None = None

    @property
    def x_end(self) -> float:
        return float(self.xs[-1])

    @property
    def y_end(self) -> np.ndarray:
        return self.ys[-1]

    def __call__(self, x):
        """Cubic Hermite interpolation at scalar or array x within the span."""
        x_arr = np.atleast_1d(np.asarray(x, dtype=float))
        lo, hi = self.xs[0], self.xs[-1]
        if np.any(x_arr < lo - 1e-9) or np.any(x_arr > hi + 1e-9):
            raise DomainError("interpolation abscissa outside the solution span")
        x_arr = np.clip(x_arr, lo, hi)
        idx = np.clip(np.searchsorted(self.xs, x_arr, side="right") - 1, 0,
                      len(self.xs) - 2)
        out = np.empty((len(x_arr), self.ys.shape[1]))
        for j, (xi, i) in enumerate(zip(x_arr, idx)):
            out[j] = _hermite(
                self.xs[i], self.ys[i], self.fs[i],
                self.xs[i + 1], self.ys[i + 1], self.fs[i + 1], xi,
            )
        if np.isscalar(x) or np.asarray(x).ndim == 0:
            return out[0]
        return out


def _hermite(x0, y0, f0, x1, y1, f1, x):
    h = x1 - x0
    if h <= 0:
        return np.array(y0, dtype=float)
    t = (x - x0) / h
    t2, t3 = t * t, t * t * t
    return (
        (2 * t3 - 3 * t2 + 1) * y0
        + (t3 - 2 * t2 + t) * h * f0
        + (-2 * t3 + 3 * t2) * y1
        + (t3 - t2) * h * f1
    )


def integrate(problem: OdeProblem) -> SolutionPath:
    """Integrate an OdeProblem, stopping at span end or the first event.

    Raises:
        IntegrationError: On step-size underflow or a non-finite state; the
            error carries the last good (x, y).
    """
    x0, x1 = problem.span
    y = np.asarray(problem.y0, dtype=float)
    rhs = problem.rhs

    f = np.asarray(rhs(x0, y), dtype=float)
    if not np.all(np.isfinite(f)):
        raise IntegrationError("right-hand side not finite at initial state", x0, y)

    xs = [x0]
    ys = [y.copy()]
    fs = [f.copy()]

    if x1 == x0:
        return SolutionPath(np.array(xs), np.array(ys), np.array(fs), "point")

    g_old = [ev.fn(x0, y) for ev in problem.events]

    span = x1 - x0
    h = problem.first_step if problem.first_step is not None else span / 256.0
    h = min(h, problem.max_step, span)
    x = x0
    n_accepted = 0

    eps = np.finfo(float).eps
    for _ in range(problem.max_steps):
        remaining = x1 - x
        if remaining <= 16.0 * eps * max(abs(x1), 1.0):
            break
        h = min(h, remaining, problem.max_step)
        if h < 16.0 * eps * max(abs(x), 1.0):
            raise IntegrationError(
                f"step size underflow at x={x:.6g} (possible singularity); "
                "try a smaller span or looser stop condition",
                x, y,
            )

        k = np.empty((7, y.size))
        k[0] = f
        failed = False
        for i in range(1, 7):
            yi = y + h * (_A[i] @ k[:i])
            ki = np.asarray(rhs(x + _C[i] * h, yi), dtype=float)
            if not np.all(np.isfinite(ki)):
                failed = True
                break
            k[i] = ki
        if failed:
            h *= 0.25
            continue

        y_new = y + h * (_B5 @ k)
        err_vec = h * (_ERR @ k)
        scale = problem.atol + problem.rtol * np.maximum(np.abs(y), np.abs(y_new))
        err = math.sqrt(float(np.mean((err_vec / scale) ** 2)))

        if err > 1.0:
            h *= max(0.2, 0.9 * err ** -0.2)
            continue

        x_new = x + h
        f_new = k[6]  # FSAL: last stage is rhs at (x_new, y_new)

        # event detection over the accepted step
        hit_idx, hit_x, hit_y = None, None, None
        for ie, ev in enumerate(problem.events):
            g1 = ev.fn(x_new, y_new)
            g0 = g_old[ie]
            crossed = (
                (g0 > 0.0 >= g1 and ev.direction <= 0)
                or (g0 < 0.0 <= g1 and ev.direction >= 0)
            )
            if crossed and g0 != g1:
                xg = _locate_event(ev, x, y, f, x_new, y_new, f_new, g0, g1)
                if hit_x is None or xg < hit_x:
                    hit_idx, hit_x = ie, xg
            g_old[ie] = g1

        if hit_idx is not None:
            y_hit = _hermite(x, y, f, x_new, y_new, f_new, hit_x)
            f_hit = np.asarray(rhs(hit_x, y_hit), dtype=float)
            xs.append(hit_x)
            ys.append(y_hit)
            fs.append(f_hit)
            return SolutionPath(
                np.array(xs), np.array(ys), np.array(fs),
                "event", event_index=hit_idx, event_x=hit_x,
            )

        x, y, f = x_new, y_new, f_new
        xs.append(x)
        ys.append(y.copy())
        fs.append(f.copy())
        n_accepted += 1
        h = h * min(5.0, max(0.2, 0.9 * (err + 1e-16) ** -0.2))
    else:
        raise IntegrationError(
            f"exceeded {problem.max_steps} steps before reaching span end", x, y
        )

    return SolutionPath(np.array(xs), np.array(ys), np.array(fs), "span_end")


def _locate_event(ev, x0, y0, f0, x1, y1, f1, g0, g1):
    """Refine an event crossing inside one accepted step."""

    def g_of(x):
        return ev.fn(x, _hermite(x0, y0, f0, x1, y1, f1, x))

    scale = max(abs(g0), abs(g1))
    return root_find(
        g_of, x0, x1,
        ftol=EVENT_REL_TOL * scale,
        xtol=1e-13 * max(abs(x1 - x0), 1.0),
    )


def root_find(
    f: Callable[[float], float],
    a: float,
    b: float,
    *,
    ftol: float = 0.0,
    xtol: float = 1e-12,
    max_iter: int = 200,
) -> float:
    """Bracketing scalar root finder: bisection with secant acceleration.

    Uses false-position steps with the Illinois modification, falling back
    to bisection whenever the secant step degenerates; linear residuals
    converge in one or two iterations.

    Args:
        f: Scalar function with a sign change on [a, b].
        a, b: Bracket endpoints.
        ftol: Return as soon as |f(x)| <= ftol (0 disables).
        xtol: Return when the bracket width falls below xtol.
        max_iter: Hard iteration cap.

    Raises:
        DomainError: If f(a) and f(b) have the same sign.
    """
    fa = float(f(a))
    if abs(fa) <= ftol or fa == 0.0:
        return a
    fb = float(f(b))
    if abs(fb) <= ftol or fb == 0.0:
        return b
    if (fa > 0) == (fb > 0):
        raise DomainError(
            f"root_find bracket [{a:.6g}, {b:.6g}] has no sign change "
            f"(f={fa:.6g}, {fb:.6g})"
        )

    side = 0
    x_best, f_best = (a, fa) if abs(fa) < abs(fb) else (b, fb)
    for _ in range(max_iter):
        # secant / false-position candidate, bisection as safeguard
        denom = fb - fa
        x = (a * fb - b * fa) / denom if denom != 0 else 0.5 * (a + b)
        lo, hi = (a, b) if a < b else (b, a)
        if not (lo < x < hi) or not math.isfinite(x):
            x = 0.5 * (a + b)
        fx = float(f(x))
        if abs(fx) < abs(f_best):
            x_best, f_best = x, fx
        if abs(fx) <= ftol or fx == 0.0:
            return x
        if (fx > 0) == (fa > 0):
            a, fa = x, fx
            if side == -1:
                fb *= 0.5  # Illinois: halve the stale endpoint residual
            side = -1
        else:
            b, fb = x, fx
            if side == 1:
                fa *= 0.5
            side = 1
        if abs(b - a) <= xtol + 4.0 * np.finfo(float).eps * max(abs(a), abs(b)):
            return x_best
    return x_best
