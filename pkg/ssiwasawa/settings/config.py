"""
Configuration management for ssiwasawa.

This module handles loading and validation of configuration from environment
variables, a `.env` file and command line overrides.
"""

import enum
from typing import Optional

from pydantic import BaseModel, Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict
from sympy import isprime


class LogLevel(str, enum.Enum):
    """Log level options for configuring the logging verbosity."""

    DEBUG = "debug"
    VERBOSE = "verbose"
    INFO = "info"
    WARNING = "warning"
    ERROR = "error"


class EZeroConvention(str, enum.Enum):
    """How the pi-sequence is anchored at level zero."""

    # e_0 = 0 and e_n generates k_n = Q_p(F_f[pi^n])
    ZERO = "zero"
    # e_0 is a primitive pi-division point, so e_n generates k_{n+1}
    PRIMITIVE = "primitive"


class IncrementVariant(str, enum.Enum):
    """Which display of the Sha-increment formula to evaluate."""

    AS_STATED = "as-stated"
    PROOF_DERIVED = "proof-derived"


class HypothesisFlags(BaseModel):
    """Global arithmetic hypotheses asserted by the caller (never checked)."""

    S: bool = Field(default=False, description="Hypothesis (S) asserted")
    G: bool = Field(default=False, description="Hypothesis (G) asserted")
    W: bool = Field(default=False, description="Hypothesis (W) asserted")
    B: bool = Field(default=False, description="Hypothesis (B), bounded corank, asserted")

    def header(self) -> str:
        """Render the flags as a one-line report header."""
        flags = ", ".join(f"({name})={'yes' if getattr(self, name) else 'no'}" for name in "SGWB")
        return f"hypotheses: {flags}; a_p=0 assumed"


class Settings(BaseSettings):
    """
    Main settings class for ssiwasawa.

    Loads configuration from environment variables (prefix SSIWASAWA_)
    and an optional `.env` file.
    """

    prime: int = Field(default=3, description="The odd prime p")
    precision: int = Field(default=8, description="Working p-adic precision N (digits)", ge=1)
    degree: int = Field(default=32, description="Series truncation degree D", ge=2)
    seed: int = Field(default=0, description="Seed for randomized property fuzzing")
    log_level: LogLevel = Field(default=LogLevel.INFO, description="Minimum logging level")

    e0_convention: EZeroConvention = Field(
        default=EZeroConvention.ZERO,
        description="Anchor of the pi-sequence at level zero",
    )
    increment_variant: IncrementVariant = Field(
        default=IncrementVariant.PROOF_DERIVED,
        description="Sha-increment display used when none is given explicitly",
    )
    span_degree_cap: int = Field(
        default=18,
        description="Largest tower degree accepted by the maximal-ideal span check",
    )
    max_series_degree: int = Field(
        default=96,
        description="Largest series degree used to evaluate Galois actions of general lifts",
    )
    guard_digits: Optional[int] = Field(
        default=None,
        description="Extra internal p-adic digits; derived from the degree when unset",
    )
    hypotheses: HypothesisFlags = Field(
        default_factory=HypothesisFlags,
        description="Caller-asserted global hypotheses echoed into reports",
    )

    model_config = SettingsConfigDict(
        env_prefix="SSIWASAWA_",
        env_file=".env",
        env_file_encoding="utf-8",
        env_nested_delimiter="__",
        extra="ignore",
    )

    @field_validator("prime")
    @classmethod
    def validate_prime(cls, v: int) -> int:
        """
        Ensure the prime is odd.

        Args:
            v: The prime to validate.

        Returns:
            The validated prime.
        """
        if v < 3 or not isprime(v):
            raise ValueError(f"prime must be an odd prime, got {v}")
        return v

    def working_guard(self) -> int:
        """
        Guard digits used for series built with denominators.

        Returns:
            The configured guard, or one derived from the truncation degree.
        """
        if self.guard_digits is not None:
            return self.guard_digits
        return self.degree + 4


def load_settings() -> Settings:
    """
    Load and validate settings from environment variables.

    Returns:
        Settings: The loaded and validated settings.
    """
    return Settings()
