"""Application configuration using pydantic-settings."""

from functools import lru_cache
from pathlib import Path
from typing import Literal, Optional

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict
from sympy import isprime

# 2^31 - 1, the default Monte Carlo modulus
DEFAULT_PRIME = 2147483647


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="MULTBOUND_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Coefficient field
    field_kind: Literal["prime", "rational"] = "prime"
    prime: int = DEFAULT_PRIME

    # Randomness and oracle
    seed: int = 0
    trials: int = 3
    k_max: Optional[int] = None
    jobs: int = 1
    debug_checks: bool = False

    # Logging
    log_level: str = "WARNING"
    log_file: Optional[str] = None

    # Fixtures
    fixtures_dir: Path = Path("fixtures")

    # Omega optimizer
    omega_dps: int = 50
    omega_grid: int = 2000

    @field_validator("prime")
    @classmethod
    def check_prime(cls, v: int) -> int:
        """Only primes in (2^30, 2^31) are accepted."""
        if not (2**30 < v < 2**31) or not isprime(v):
            raise ValueError(f"prime must be a prime in (2^30, 2^31), got {v}")
        return v

    @field_validator("trials", "jobs")
    @classmethod
    def check_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("must be >= 1")
        return v

    @field_validator("k_max", mode="before")
    @classmethod
    def parse_k_max(cls, v):
        """Empty string in .env means "derive automatically"."""
        if isinstance(v, str) and not v.strip():
            return None
        return v


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
