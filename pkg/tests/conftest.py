import os

import pytest
from hypothesis import HealthCheck, settings

from photocool import presets

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
CONFIGS = os.path.join(ROOT, "configs")
GOLDEN = os.path.join(ROOT, "tests", "golden")


@pytest.fixture(scope="session")
def flank():
    """Peaked strong-cooling point on the red flank, Gamma_eff/Gamma = 1e3."""
    return presets.flank_system(Q=1e7, gamma_ratio=1e3)


@pytest.fixture
def config_path():
    return lambda name: os.path.join(CONFIGS, name)
