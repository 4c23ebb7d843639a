import pytest
from hypothesis import HealthCheck, settings
from mpmath import mp

settings.register_profile(
    "flutetype",
    max_examples=50,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("flutetype")

TEST_PRECISION_BITS = 128

# parametrize tables are built at import time
mp.prec = TEST_PRECISION_BITS


@pytest.fixture(autouse=True, scope="session")
def working_precision_128():
    """Every test starts at 128 bits; tests needing more use mp.workprec."""
    saved = mp.prec
    mp.prec = TEST_PRECISION_BITS
    yield
    mp.prec = saved


def close(x, y, rel=1e-30, abs_tol=0):
    """Relative comparison at mpmath precision."""
    x, y = mp.mpf(x), mp.mpf(y)
    return abs(x - y) <= max(rel * max(abs(x), abs(y)), abs_tol)
