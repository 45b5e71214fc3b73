import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "pntlab",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
    derandomize=True,
)
settings.load_profile("pntlab")


@pytest.fixture
def rng():
    import numpy as np

    return np.random.default_rng(12345)
