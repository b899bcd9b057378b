"""Application settings using Pydantic Settings."""

from typing import Literal

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class Settings(BaseSettings):
    """Numeric defaults loaded from environment variables."""

    # Working precision (decimal digits)
    digits: int = Field(default=50, ge=10, alias="BINOMIAL_SERIES_DIGITS")

    # Convergent series
    max_terms: int = Field(default=10000, ge=1, alias="BINOMIAL_SERIES_MAX_TERMS")
    tol: float = Field(default=1e-12, gt=0, alias="BINOMIAL_SERIES_TOL")
    shift_target: float = Field(
        default=24.0,
        ge=0,
        alias="BINOMIAL_SERIES_SHIFT_TARGET",
        description="Hasse series arguments below this value are moved up by recurrence",
    )

    # Asymptotic series
    asymptotic_max_terms: int = Field(
        default=500, ge=2, alias="BINOMIAL_SERIES_ASYMPTOTIC_MAX_TERMS"
    )

    # Output
    output_format: Literal["json", "csv", "plain"] = Field(
        default="json", alias="BINOMIAL_SERIES_FORMAT"
    )
    log_level: str = Field(default="WARNING", alias="LOG_LEVEL")

    model_config = {
        "env_file": ".env",
        "env_file_encoding": "utf-8",
        "case_sensitive": False,
        "extra": "ignore",
        "populate_by_name": True,
    }

    @field_validator("log_level")
    @classmethod
    def _normalize_log_level(cls, value: str) -> str:
        level = value.upper()
        if level not in LOG_LEVELS:
            raise ValueError(f"log level must be one of {', '.join(LOG_LEVELS)}")
        return level


# Singleton instance
settings = Settings()
