"""Lagrangian machinery for the two variational trajectory problems.

Unrestricted problem (free speed): with the substitution Z = 2 sqrt(W), the
fuel integrand factors as F(h) G(h') where

    F(h)  = C(h) sqrt(rho(h) S) / sqrt(2)
    G(v)  = [cd0 sqrt(R) + k cos^2(g) R^-1.5 + sin(g) R^-0.5] / cos(g),
            g = arctan(v), R = r_gamma(g),

so F carries all altitude dependence and G is pure drag polar. For
exponential density and power-law SFC, F'/F = -(x_C + 1/2)/H is constant
and the stationarity equation becomes autonomous in v.

Speed-restricted problem (prescribed IAS): the weight cannot be
substituted away; the fuel rate is a genuine Lagrangian

    L(W, h, v) = A(h) [B(h) s + E(h) W^2 / s + W v],   s = sqrt(1 + v^2),
    A = C/V_F,  B = cd0 U,  E = k/U,  U(h) = 1/2 rho V_F^2 S,

kept with W as a slowly varying passenger (W' = -L).

All derivative evaluators are exact chain-rule closed forms, certified
against Richardson central differences at construction time; the
stationarity equations divide by second derivatives, so derivative noise
would be amplified.
"""
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from . import oracle
from .errors import CertificationError, DomainError
from .model import AircraftModel

_CERT_TOL = 1e-7


@dataclass(frozen=True)
class ELContext:
    """F/G factorization of the free-speed fuel integrand, with derivatives."""

    cd0: float
    k: float
    wing_area: float
    rho_sl: float
    scale_height: float
    c_sl: float
    sfc_exponent: float
    f_log_derivative: float  # F'/F, constant: -(x_C + 1/2) / scale_height

    def f(self, h: float) -> float:
        """Altitude factor F(h) = C(h) sqrt(rho(h) S) / sqrt(2), positive."""
        sigma = math.exp(-h / self.scale_height)
        c_h = self.c_sl * sigma**self.sfc_exponent
        rho = self.rho_sl * sigma
        return c_h * math.sqrt(rho * self.wing_area / 2.0)

    def _terms(self, v: float):
        c2 = 1.0 / (1.0 + v * v)
        c = math.sqrt(c2)
        s = v * c
        q = math.sqrt(s * s + 12.0 * self.k * self.cd0 * c2)
        r = (s + q) / (2.0 * self.cd0)
        return s, c, c2, q, r

    def g(self, v: float) -> float:
        """Slope factor G(v) of the fuel integrand."""
        s, c, c2, _q, r = self._terms(v)
        return (self.cd0 * math.sqrt(r) + self.k * c2 * r**-1.5 + s * r**-0.5) / c

    def g1(self, v: float) -> float:
        """Exact dG/dv.

        Because R = r_gamma is the pointwise minimizer of the integrand,
        dR/dg drops out of the first derivative (envelope property):
        dG/dg = -2 k sin(g) R^-1.5 + R^-0.5 + G tan(g), then dg/dv = cos^2.
        """
        s, _c, c2, _q, r = self._terms(v)
        g_val = self.g(v)
        dg_dgamma = -2.0 * self.k * s * r**-1.5 + r**-0.5 + g_val * v
        return dg_dgamma * c2

    def g2(self, v: float) -> float:
        """Exact d2G/dv2 (the envelope property does not survive; dR/dg enters)."""
        s, c, c2, q, r = self._terms(v)
        g_val = self.g(v)
        dg_dgamma = -2.0 * self.k * s * r**-1.5 + r**-0.5 + g_val * v
        dr_dgamma = c * (1.0 + s * (1.0 - 12.0 * self.k * self.cd0) / q) / (
            2.0 * self.cd0
        )
        d2g_dgamma2 = (
            -2.0 * self.k * c * r**-1.5
            + 3.0 * self.k * s * r**-2.5 * dr_dgamma
            - 0.5 * r**-1.5 * dr_dgamma
            + dg_dgamma * v
            + g_val / c2
        )
        return c2 * c2 * (d2g_dgamma2 - 2.0 * v * dg_dgamma)

    def transition_curvature(self, v: float) -> float:
        """Path curvature h'' used by the transition integrator.

        The raw stationarity equation of the product integrand,
        h'' = (F'/F)(G - v G')/G'', has G'' < 0 on the whole admissible
        range of this drag-polar family (closed form at v = 0:
        G''(0) = R0^-1.5 (2k - 1/(4 cd0)), negative whenever
        12 k cd0 < 1). Its solutions steepen monotonically and never
        connect a maximum-thrust climb to an idle descent. The usable
        connecting arcs are the mirror-image branch

            h'' = (F'/F)(v G' - G)/G'',

        which is concave, traverses the path angle from the climb value
        down through level flight to the idle-thrust angle, and carries a
        monotonically decreasing thrust schedule. See README (design
        notes) for the full discussion.
        """
        g2 = self.g2(v)
        if abs(g2) < 1e-12:
            raise DomainError(
                f"slope-factor curvature vanishes near v={v:.4g}; "
                "transition equation singular"
            )
        return self.f_log_derivative * (v * self.g1(v) - self.g(v)) / g2


@lru_cache(maxsize=8)
def _certified_el_context(cd0, k, wing_area, rho_sl, scale_height, c_sl,
                          sfc_exponent) -> ELContext:
    ctx = ELContext(
        cd0=cd0, k=k, wing_area=wing_area, rho_sl=rho_sl,
        scale_height=scale_height, c_sl=c_sl, sfc_exponent=sfc_exponent,
        f_log_derivative=-(sfc_exponent + 0.5) / scale_height,
    )
    grid = np.tan(np.radians(np.linspace(-10.0, 15.0, 81)))
    rep1 = oracle.finite_difference_check(ctx.g, ctx.g1, grid, step=1e-6)
    rep2 = oracle.finite_difference_check(ctx.g1, ctx.g2, grid, step=1e-6)
    if not (rep1.passed(_CERT_TOL) and rep2.passed(_CERT_TOL)):
        raise CertificationError(
            "slope-factor derivatives failed the finite-difference check: "
            f"G' dev={rep1.max_rel_deviation:.3g} at v={rep1.worst_point:.4g}, "
            f"G'' dev={rep2.max_rel_deviation:.3g} at v={rep2.worst_point:.4g}"
        )
    return ctx


def el_context(model: AircraftModel) -> ELContext:
    """Build (and cache) the certified F/G context for an aircraft model."""
    return _certified_el_context(
        model.polar.cd0, model.polar.k, model.wing_area,
        model.atmosphere.rho_sl, model.atmosphere.scale_height,
        model.propulsion.c_sl, model.propulsion.sfc_exponent,
    )


@dataclass(frozen=True)
class SpeedLawContext:
    """Lagrangian of the speed-restricted problem with exact partials.

    Built for a prescribed true-airspeed law V_F(h). For the standard
    constant-IAS restriction the h-dependent coefficients have exact
    log-derivatives (U is altitude-independent under the equivalent-
    airspeed conversion); for a custom law they fall back to Richardson
    differences of the law itself.
    """

    cd0: float
    k: float
    v_f: Callable[[float], float]
    u: Callable[[float], float]
    a: Callable[[float], float]
    a1: Callable[[float], float]
    u1: Callable[[float], float]

    def lagrangian(self, w: float, h: float, v: float) -> float:
        """Fuel burned per unit distance, -dW/dx (N/m)."""
        s = math.sqrt(1.0 + v * v)
        u_h = self.u(h)
        return self.a(h) * (
            self.cd0 * u_h * s + self.k * w * w / (u_h * s) + w * v
        )

    def partials(self, w: float, h: float, v: float):
        """(L, L_h, L_v, L_vv, L_vh) at one point, all exact closed forms."""
        s2 = 1.0 + v * v
        s = math.sqrt(s2)
        s3 = s2 * s
        s5 = s2 * s3
        u_h = self.u(h)
        a_h = self.a(h)
        b = self.cd0 * u_h
        e = self.k / u_h
        u1_h = self.u1(h)
        b1 = self.cd0 * u1_h
        e1 = -self.k * u1_h / (u_h * u_h)
        a1_h = self.a1(h)
        w2 = w * w

        core = b * s + e * w2 / s + w * v
        core_v = b * v / s - e * w2 * v / s3 + w
        lagr = a_h * core
        l_h = a1_h * core + a_h * (b1 * s + e1 * w2 / s)
        l_v = a_h * core_v
        l_vv = a_h * (b / s3 - e * w2 * (s2 - 3.0 * v * v) / s5)
        l_vh = a1_h * core_v + a_h * (b1 * v / s - e1 * w2 * v / s3)
        return lagr, l_h, l_v, l_vv, l_vh


def speed_law_context(model: AircraftModel,
                      v_law: Callable[[float], float] | None = None
                      ) -> SpeedLawContext:
    """Certified Lagrangian context for a prescribed-speed climb/descent.

    Args:
        model: Aircraft model; supplies the drag polar, wing area, SFC law.
        v_law: Optional custom true-airspeed law h -> m/s. Defaults to the
            model's IAS restriction converted to TAS.
    """
    polar = model.polar
    prop = model.propulsion
    scale_height = model.atmosphere.scale_height

    if v_law is None:
        v_f = model.restriction_tas

        def u(h: float) -> float:
            return model.restriction_dynamic_pressure_area(h)

        def a(h: float) -> float:
            return prop.sfc(h) / v_f(h)

        # C ~ sigma^xC and 1/V_F ~ sigma^(1/2): exact log-derivative.
        a_log = -(prop.sfc_exponent + 0.5) / scale_height

        def a1(h: float) -> float:
            return a_log * a(h)

        def u1(h: float) -> float:  # U is altitude-independent for this law
            return 0.0
    else:
        v_f = v_law
        rho = model.atmosphere.density

        def u(h: float) -> float:
            return 0.5 * rho(h) * v_f(h) ** 2 * model.wing_area

        def a(h: float) -> float:
            return prop.sfc(h) / v_f(h)

        def _richardson(fn, h, step=1.0):
            d1 = (fn(h + step) - fn(h - step)) / (2.0 * step)
            d2 = (fn(h + step / 2) - fn(h - step / 2)) / step
            return (4.0 * d2 - d1) / 3.0

        def a1(h: float) -> float:
            return _richardson(a, h)

        def u1(h: float) -> float:
            return _richardson(u, h)

    ctx = SpeedLawContext(cd0=polar.cd0, k=polar.k, v_f=v_f, u=u, a=a,
                          a1=a1, u1=u1)
    _certify_speed_law(ctx)
    return ctx


def _certify_speed_law(ctx: SpeedLawContext) -> None:
    """Finite-difference certification of the Lagrangian partials."""
    h_grid = np.linspace(200.0, 3000.0, 5)
    v_grid = np.tan(np.radians(np.linspace(-4.0, 12.0, 7)))
    w_ref = 70000.0

    worst = 0.0
    for h0 in h_grid:
        for v0 in v_grid:
            lagr, l_h, l_v, l_vv, l_vh = ctx.partials(w_ref, float(h0), float(v0))
            checks = (
                (lambda h: ctx.lagrangian(w_ref, h, v0), l_h, float(h0), 1e-2),
                (lambda v: ctx.lagrangian(w_ref, h0, v), l_v, float(v0), 1e-6),
                (lambda v: ctx.partials(w_ref, h0, v)[2], l_vv, float(v0), 1e-6),
                (lambda h: ctx.partials(w_ref, h, v0)[2], l_vh, float(h0), 1e-2),
            )
            for fn, claimed, at, step in checks:
                d1 = (fn(at + step) - fn(at - step)) / (2.0 * step)
                d2 = (fn(at + step / 2) - fn(at - step / 2)) / step
                rich = (4.0 * d2 - d1) / 3.0
                scale = max(abs(claimed), abs(lagr) * 1e-3, 1e-12)
                worst = max(worst, abs(rich - claimed) / scale)
    if worst > _CERT_TOL:
        raise CertificationError(
            f"speed-law Lagrangian partials failed certification "
            f"(max rel dev {worst:.3g})"
        )
