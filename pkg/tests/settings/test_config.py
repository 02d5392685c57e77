"""
Tests for settings loading and validation.
"""

import pytest
from pydantic import ValidationError

from ssiwasawa.settings.config import EZeroConvention, IncrementVariant, LogLevel, Settings


def test_defaults(settings):
    """Test that the fixture overrides land and the rest keep their defaults."""
    assert settings.prime == 3
    assert settings.precision == 6
    assert settings.e0_convention is EZeroConvention.ZERO
    assert settings.increment_variant is IncrementVariant.PROOF_DERIVED
    assert settings.span_degree_cap == 18
    assert settings.working_guard() == 28


def test_environment_overrides(settings, monkeypatch):
    """Test that SSIWASAWA_ variables and nested hypothesis flags are read."""
    monkeypatch.setenv("SSIWASAWA_PRIME", "5")
    monkeypatch.setenv("SSIWASAWA_LOG_LEVEL", "debug")
    monkeypatch.setenv("SSIWASAWA_HYPOTHESES__W", "true")
    loaded = Settings(_env_file=None)
    assert loaded.prime == 5
    assert loaded.log_level is LogLevel.DEBUG
    assert loaded.hypotheses.W
    assert not loaded.hypotheses.S


@pytest.mark.parametrize("prime", [2, 4, 9, 1])
def test_rejects_bad_primes(settings, prime):
    with pytest.raises(ValidationError):
        Settings(_env_file=None, prime=prime)


def test_hypothesis_header(settings):
    assert settings.hypotheses.header() == "hypotheses: (S)=no, (G)=no, (W)=no, (B)=no; a_p=0 assumed"
