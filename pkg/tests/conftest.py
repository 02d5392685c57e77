"""
Shared fixtures for the ssiwasawa test suite.
"""

import os

import pytest

from ssiwasawa.arith.padic import PadicContext
from ssiwasawa.settings.config import Settings


@pytest.fixture
def ctx():
    """A 3-adic context with eight digits of precision."""
    return PadicContext(p=3, N=8)


@pytest.fixture
def ctx5():
    """A 5-adic context with six digits of precision."""
    return PadicContext(p=5, N=6)


@pytest.fixture
def settings(monkeypatch):
    """Default settings, isolated from SSIWASAWA_ environment variables."""
    for key in list(os.environ):
        if key.startswith("SSIWASAWA_"):
            monkeypatch.delenv(key)
    return Settings(_env_file=None, prime=3, precision=6, degree=24)
