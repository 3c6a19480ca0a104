import pytest

from maxrange.config import build_model, default_config


@pytest.fixture(scope="session")
def model():
    return build_model(default_config())


@pytest.fixture(scope="session")
def polar(model):
    return model.polar


@pytest.fixture(scope="session")
def atmosphere(model):
    return model.atmosphere
