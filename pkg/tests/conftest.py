import os
import sys
from pathlib import Path

# file logging off and no ambient cache before any zslab module is imported
os.environ["ZSLAB_LOG_DIR"] = ""
os.environ.pop("ZSLAB_CACHE", None)

sys.path.insert(0, str(Path(__file__).parent.parent))

import pytest

from arithmetic.modulus import factorize
from config.settings import SearchConfig


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long acceptance runs (Ω=3 moduli, full theorem scans)")


@pytest.fixture
def mod7():
    return factorize(7)


@pytest.fixture
def mod77():
    return factorize(77)


@pytest.fixture
def mod1001():
    return factorize(1001)


@pytest.fixture
def serial_config():
    """In-process search with generous budgets"""
    return SearchConfig(threads=1, node_budget=50_000_000, time_budget_seconds=600.0)
