"""Integrator and root finder against analytic solutions."""
import math

import numpy as np
import pytest

from maxrange.errors import DomainError, IntegrationError
from maxrange.odekit import EventSpec, OdeProblem, integrate, root_find


def test_constant_rhs_is_exact():
    path = integrate(OdeProblem(lambda x, y: np.array([0.0]), [5.0], (0.0, 10.0)))
    assert path.terminal == "span_end"
    assert path.y_end[0] == pytest.approx(5.0, abs=1e-14)
    assert np.all(np.diff(path.xs) > 0)


def test_linear_rhs_is_exact():
    beta = 3.7
    path = integrate(OdeProblem(lambda x, y: np.array([-beta]), [2.0], (0.0, 4.0)))
    assert path.y_end[0] == pytest.approx(2.0 - beta * 4.0, abs=1e-10)
    # dense output reproduces the line
    assert path(1.234)[0] == pytest.approx(2.0 - beta * 1.234, abs=1e-10)


def test_exponential_decay_within_tolerance():
    path = integrate(OdeProblem(lambda x, y: -y, [1.0], (0.0, 1.0),
                                rtol=1e-9, atol=1e-12))
    assert path.y_end[0] == pytest.approx(math.exp(-1.0), rel=1e-8)


def test_halving_tolerance_never_increases_error():
    errors = []
    for rtol in (1e-5, 5e-6, 2.5e-6, 1e-7, 1e-9):
        path = integrate(OdeProblem(lambda x, y: -y, [1.0], (0.0, 1.0),
                                    rtol=rtol, atol=rtol * 1e-3))
        errors.append(abs(path.y_end[0] - math.exp(-1.0)))
    assert all(b <= a + 1e-15 for a, b in zip(errors, errors[1:]))


def test_event_location_accuracy():
    target = math.exp(-0.7)
    ev = EventSpec(lambda x, y: y[0] - target, direction=-1)
    path = integrate(OdeProblem(lambda x, y: -y, [1.0], (0.0, 2.0), events=(ev,)))
    assert path.terminal == "event"
    assert path.event_index == 0
    assert path.x_end == pytest.approx(0.7, abs=1e-8)
    assert abs(path.y_end[0] - target) < 1e-10  # monitor residual at the root


def test_event_location_independent_of_step_history():
    target = math.exp(-0.7)
    xs = []
    for rtol in (1e-8, 1e-9):
        ev = EventSpec(lambda x, y: y[0] - target, direction=-1)
        path = integrate(OdeProblem(lambda x, y: -y, [1.0], (0.0, 2.0),
                                    rtol=rtol, events=(ev,)))
        xs.append(path.x_end)
    assert abs(xs[0] - xs[1]) < 1e-6 * 2.0


def test_rising_event_direction_filter():
    # y = sin(x) - sin(0.5): the falling crossing at pi - 0.5 is ignored,
    # the rising one at 2 pi + 0.5 terminates
    ev = EventSpec(lambda x, y: y[0], direction=1)
    path = integrate(OdeProblem(lambda x, y: np.array([math.cos(x)]), [0.0],
                                (0.5, 7.0), events=(ev,)))
    assert path.terminal == "event"
    assert path.x_end == pytest.approx(2.0 * math.pi + 0.5, abs=1e-7)


def test_nan_rhs_raises():
    def rhs(x, y):
        return np.array([float("nan")])

    with pytest.raises(IntegrationError):
        integrate(OdeProblem(rhs, [1.0], (0.0, 1.0)))


def test_zero_span_returns_point():
    path = integrate(OdeProblem(lambda x, y: -y, [1.0], (0.0, 0.0)))
    assert path.terminal == "point"
    assert len(path.xs) == 1


def test_root_find_sqrt_two():
    x = root_find(lambda t: t * t - 2.0, 1.0, 2.0, xtol=1e-13)
    assert x == pytest.approx(math.sqrt(2.0), abs=1e-8)


def test_root_find_on_thrust_schedule(polar):
    target = 0.09666436778875657
    x = root_find(lambda g: polar.tau(g) - target,
                  math.radians(-5.0), math.radians(10.0), ftol=1e-14)
    assert x == pytest.approx(0.0, abs=1e-10)


def test_root_find_linear_takes_secant_shortcut():
    calls = []

    def f(x):
        calls.append(x)
        return 2.0 * x - 1.0

    x = root_find(f, 0.0, 2.0, ftol=1e-12)
    assert x == pytest.approx(0.5, abs=1e-12)
    # two bracket endpoints plus at most two secant iterations
    assert len(calls) <= 4


def test_root_find_requires_sign_change():
    with pytest.raises(DomainError, match="sign change"):
        root_find(lambda t: t * t + 1.0, -1.0, 1.0)
