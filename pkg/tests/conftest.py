import pytest

from hilbfock import new_model
from hilbfock.operators import OperatorEngine
from hilbfock.segre import Sampler


@pytest.fixture(scope="session")
def model():
    """Minimal model: d=1, pi=0, kappa=-1, no extra middle classes (e=4)."""
    return new_model(1, 0, -1, 0)


@pytest.fixture(scope="session")
def model_b2():
    """A model with one extra middle class (e=5)."""
    return new_model(2, 1, -1, 1)


@pytest.fixture(scope="session")
def engine(model):
    return OperatorEngine(model)


@pytest.fixture(scope="session")
def engine_b2(model_b2):
    return OperatorEngine(model_b2)


@pytest.fixture(scope="session")
def sampler():
    """Shared in-memory sample cache so chains are computed once per run."""
    return Sampler()
