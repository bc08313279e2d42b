import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "deterministic",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("deterministic")


@pytest.fixture(scope="session")
def grid1d():
    """Inclusive 1D grid builder returning point tuples."""

    def make(lo: float, hi: float, step: float):
        n = int(round((hi - lo) / step))
        return [(lo + i * step,) for i in range(n + 1)]

    return make
