import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

from ldpc_gauge import kernels  # noqa: E402


@pytest.fixture(params=kernels.available_backends())
def each_backend(request):
    with kernels.use_backend(request.param):
        yield request.param


@pytest.fixture
def fixtures_dir() -> Path:
    return Path(__file__).with_name("fixtures")
