"""Lagrangian contexts: exact derivatives, certified factorizations."""
import math

import numpy as np
import pytest

from maxrange.config import build_model, default_config
from maxrange.variational import el_context, speed_law_context

G_AT_LEVEL = 0.05561708163181713  # cd0 sqrt(R0) + k R0^-1.5


@pytest.fixture(scope="module")
def ctx(model):
    return el_context(model)


def test_altitude_factor_log_derivative(ctx, model):
    x_c = model.propulsion.sfc_exponent
    expected = -(x_c + 0.5) / model.atmosphere.scale_height
    assert ctx.f_log_derivative == pytest.approx(expected, rel=1e-15)
    # matches a finite difference of log F
    h = 4000.0
    fd = (math.log(ctx.f(h + 1.0)) - math.log(ctx.f(h - 1.0))) / 2.0
    assert fd == pytest.approx(ctx.f_log_derivative, rel=1e-8)


def test_slope_factor_at_level(ctx):
    assert ctx.g(0.0) == pytest.approx(G_AT_LEVEL, rel=1e-12)


def test_slope_factor_derivatives_match_finite_differences(ctx):
    for v in np.tan(np.radians(np.linspace(-8.0, 12.0, 25))):
        d1 = (ctx.g(v + 1e-6) - ctx.g(v - 1e-6)) / 2e-6
        assert ctx.g1(float(v)) == pytest.approx(d1, rel=1e-6)
        d2 = (ctx.g1(v + 1e-6) - ctx.g1(v - 1e-6)) / 2e-6
        assert ctx.g2(float(v)) == pytest.approx(d2, rel=1e-6)


def test_integrand_stationary_in_r_at_optimum(ctx, polar):
    # at fixed angle, the fuel-per-distance factor is stationary in R
    # exactly at the schedule's pressure ratio (envelope property)
    for gamma in np.radians((-4.0, 0.0, 6.0)):
        r_opt = polar.r_gamma(float(gamma))
        s, c2 = math.sin(gamma), math.cos(gamma) ** 2

        def f_of_r(r):
            return polar.cd0 * math.sqrt(r) + polar.k * c2 * r**-1.5 + s * r**-0.5

        d = (f_of_r(r_opt * (1 + 1e-6)) - f_of_r(r_opt * (1 - 1e-6))) / (2e-6 * r_opt)
        assert abs(d) < 1e-9


def test_curvature_negative_throughout_operating_range(ctx):
    for v in np.tan(np.radians(np.linspace(-8.0, 12.0, 41))):
        assert ctx.transition_curvature(float(v)) < 0.0


def test_speed_law_context_partials_certified(model):
    ctx = speed_law_context(model)  # construction certifies; no raise
    w, h, v = 70000.0, 1500.0, math.tan(math.radians(5.0))
    lagr, l_h, l_v, l_vv, l_vh = ctx.partials(w, h, v)
    assert lagr == pytest.approx(ctx.lagrangian(w, h, v), rel=1e-14)
    assert l_vv > 0.0
    # the restriction law keeps the dynamic-pressure force constant
    assert ctx.u(0.0) == pytest.approx(ctx.u(3000.0), rel=1e-12)
    assert ctx.u(0.0) == pytest.approx(218835.02083333337, rel=1e-9)


def test_speed_law_custom_law_falls_back_to_numeric_derivatives(model):
    ctx = speed_law_context(model, v_law=lambda h: 120.0 + 0.004 * h)
    lagr, l_h, l_v, l_vv, l_vh = ctx.partials(65000.0, 2000.0, 0.05)
    step = 1.0
    fd = (ctx.lagrangian(65000.0, 2000.0 + step, 0.05)
          - ctx.lagrangian(65000.0, 2000.0 - step, 0.05)) / (2 * step)
    assert l_h == pytest.approx(fd, rel=1e-5)


def test_context_cache_reuses_instances(model):
    assert el_context(model) is el_context(model)
    other = build_model(default_config())
    assert el_context(other) is el_context(model)  # same parameters
