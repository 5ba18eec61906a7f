import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from ausgen.algfile import load_example

settings.register_profile("ausgen", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile("ausgen")

PRIMES = (2, 3, 5)


@pytest.fixture(params=PRIMES, ids=lambda p: f"p{p}")
def ex1(request):
    return load_example(1, request.param)


@pytest.fixture
def ex1_p2():
    return load_example(1, 2)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
