import sys
from pathlib import Path

import numpy as np
import pytest

ROOT = Path(__file__).parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from src.core.constants import DEFAULT_SEED  # noqa: E402


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running numeric sweeps")


@pytest.fixture
def rng():
    return np.random.default_rng(DEFAULT_SEED)
