"""Independent brute-force verifiers for the test suite and `verify`.

Deliberately slow and structurally unrelated to the closed-form and
ODE-based implementations they cross-check: minimizers come from grid
search refined by golden section, fuel totals from composite trapezoid
quadrature on sampled flight plans, derivatives from Richardson-
extrapolated central differences. Nothing here calls the closed-form
optima or the adaptive integrator.
"""
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .aero import DragPolar
from .errors import DomainError
from .model import AircraftModel
from .strategies import FixedR, MaxLiftDrag, OptimalRange, RStrategy

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_trapz = getattr(np, "trapezoid", None) or np.trapz


def golden_section(f: Callable[[float], float], a: float, b: float,
                   tol: float = 1e-8) -> float:
    """Golden-section minimizer of a unimodal scalar function on [a, b]."""
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def _grid_then_golden(f_vec, f_scalar, lo, hi, n_grid, refine_tol, what):
    """Locate the grid minimum, reject boundary/non-unimodal cases, refine."""
    grid = np.linspace(lo, hi, n_grid)
    vals = f_vec(grid)
    i = int(np.argmin(vals))
    if i == 0 or i == n_grid - 1:
        raise DomainError(f"{what}: minimum at grid boundary, enlarge the grid")
    # unimodality: exactly one descending-to-ascending transition
    rising = np.diff(vals) > 0
    transitions = int(np.count_nonzero(np.diff(rising.astype(int)) == 1))
    if transitions > 1:
        raise DomainError(f"{what}: objective not unimodal on the grid")
    return golden_section(f_scalar, grid[i - 1], grid[i + 1], refine_tol)


def brute_min_r(polar: DragPolar, gamma: float, *, r_lo: float = 0.1,
                r_hi: float = 50.0, n_grid: int = 10001,
                refine_tol: float = 1e-8) -> float:
    """Brute-force minimizer over R of the fuel-per-distance factor.

    Objective: cd0 sqrt(R) + k cos^2(gamma) R^-1.5 + sin(gamma) R^-0.5.
    Grid search (>= 1e4 points) plus golden-section refinement.
    """
    s, c2 = math.sin(gamma), math.cos(gamma) ** 2

    def f_vec(r):
        return polar.cd0 * np.sqrt(r) + polar.k * c2 * r**-1.5 + s * r**-0.5

    def f_scalar(r):
        return polar.cd0 * math.sqrt(r) + polar.k * c2 * r**-1.5 + s * r**-0.5

    return _grid_then_golden(f_vec, f_scalar, r_lo, r_hi, n_grid, refine_tol,
                             "brute_min_r")


def brute_min_r_ld(polar: DragPolar, gamma: float, *, r_lo: float = 0.05,
                   r_hi: float = 20.0, n_grid: int = 10001,
                   refine_tol: float = 1e-8) -> float:
    """Brute-force minimizer of the drag-per-lift denominator cd0 R + k cos^2 / R."""
    c2 = math.cos(gamma) ** 2

    def f_vec(r):
        return polar.cd0 * r + polar.k * c2 / r

    return _grid_then_golden(f_vec, f_vec, r_lo, r_hi, n_grid, refine_tol,
                             "brute_min_r_ld")


def brute_fuel(model: AircraftModel, xs: Sequence[float], hs: Sequence[float],
               w0: float, strategy: RStrategy, *,
               max_spacing: float = 50.0) -> float:
    """Fuel (N) burned along a sampled flight plan, by plain quadrature.

    Works in the substituted variable Z = 2 sqrt(W), whose derivative
    dZ/dx = -C(h) sqrt(rho(h) S / (2 R)) * (T/W)(R, gamma) / cos(gamma)
    does not involve the weight, so the total is a composite-trapezoid
    integral over the samples. The path angle comes from central
    differences of the altitude samples; the pressure ratio of the
    range-optimal strategy comes from brute_min_r, not the closed form.

    Args:
        xs, hs: Plan samples; spacing must not exceed `max_spacing` meters.
        w0: Weight (N) at the first sample.
        strategy: FixedR, MaxLiftDrag, or OptimalRange.
    """
    xs = np.asarray(xs, dtype=float)
    hs = np.asarray(hs, dtype=float)
    if xs.ndim != 1 or xs.shape != hs.shape or len(xs) < 2:
        raise DomainError("plan must be two equal-length 1-d sample arrays")
    dx = np.diff(xs)
    if np.any(dx <= 0):
        raise DomainError("plan abscissae must be strictly increasing")
    if float(np.max(dx)) > max_spacing * (1 + 1e-9):
        raise DomainError(
            f"plan sampled too coarsely ({np.max(dx):.1f} m > {max_spacing} m)"
        )
    slopes = np.gradient(hs, xs)

    polar = model.polar
    s_wing = model.wing_area
    integrand = np.empty(len(xs))
    for i, (h, slope) in enumerate(zip(hs, slopes)):
        gamma = math.atan(slope)
        if isinstance(strategy, FixedR):
            r = strategy.value
        elif isinstance(strategy, MaxLiftDrag):
            r = brute_min_r_ld(polar, gamma)
        elif isinstance(strategy, OptimalRange):
            r = brute_min_r(polar, gamma)
        else:
            raise DomainError(f"unknown strategy {strategy!r}")
        rho = model.atmosphere.density(h)
        c_h = model.propulsion.sfc(h)
        tw = polar.thrust_ratio(r, gamma)
        integrand[i] = (
            -c_h / math.cos(gamma) * tw * math.sqrt(rho * s_wing / (2.0 * r))
        )
    dz = float(_trapz(integrand, xs))
    z_end = 2.0 * math.sqrt(w0) + dz
    if z_end <= 0:
        raise DomainError("plan burns more fuel than the starting weight")
    return w0 - (z_end / 2.0) ** 2


@dataclass(frozen=True)
class FDReport:
    """Outcome of a finite-difference derivative check."""

    max_rel_deviation: float
    worst_point: float
    n_points: int

    def passed(self, tol: float) -> bool:
        return self.max_rel_deviation < tol


def finite_difference_check(f: Callable[[float], float],
                            f_prime: Callable[[float], float],
                            grid: Sequence[float], *,
                            step: float | None = None) -> FDReport:
    """Compare f_prime against Richardson-extrapolated central differences.

    Report-only: never raises on disagreement. The relative deviation at
    each grid point is measured against the larger of the local |f'| and
    a grid-wide floor, so isolated zeros of f' do not blow up the ratio.
    """
    grid = np.asarray(grid, dtype=float)
    claimed = np.array([f_prime(x) for x in grid])
    floor = 1e-6 * float(np.max(np.abs(claimed))) + 1e-300

    worst, worst_x = 0.0, float(grid[0])
    for x, fp in zip(grid, claimed):
        h = step if step is not None else 1e-4 * max(1.0, abs(x))
        d_h = (f(x + h) - f(x - h)) / (2.0 * h)
        d_h2 = (f(x + h / 2) - f(x - h / 2)) / h
        richardson = (4.0 * d_h2 - d_h) / 3.0
        dev = abs(richardson - fp) / max(abs(fp), floor)
        if dev > worst:
            worst, worst_x = dev, float(x)
    return FDReport(max_rel_deviation=worst, worst_point=worst_x,
                    n_points=len(grid))
