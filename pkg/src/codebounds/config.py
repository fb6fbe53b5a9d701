"""
Configuration management for codebounds.

Handles environment variables, runtime settings and the enums shared by the
bound modules, the sweep harness and the CLI.
"""

from __future__ import annotations

import os
from enum import Enum
from functools import lru_cache
from importlib.resources import files
from pathlib import Path

from dotenv import load_dotenv
from pydantic import BaseModel, Field

# Load environment variables from .env file
load_dotenv()

# Value of CODEBOUNDS_KNOWN_VALUES that switches the known-values table off
DISABLED_PATH = "none"


class Environment(str, Enum):
    """Application environment."""

    DEVELOPMENT = "development"
    STAGING = "staging"
    PRODUCTION = "production"


class DeltaMode(str, Enum):
    """How the ball-ratio correction term of Bound A / Bound B is evaluated."""

    FLOOR = "floor"  # integer floor division, the statistics' reading
    EXACT = "exact"  # exact rational, never yields a larger k


class OutputFormat(str, Enum):
    """Serialization format for sweep rows and statistics."""

    CSV = "csv"
    JSON = "json"


def packaged_known_values_path() -> Path:
    """Location of the binary known-values table shipped with the package."""
    return Path(str(files("codebounds").joinpath("data/known_values_binary.csv")))


def packaged_reference_rows_path() -> Path:
    """Location of the published reference rows shipped with the package."""
    return Path(str(files("codebounds").joinpath("data/reference_rows.csv")))


class Settings(BaseModel):
    """
    Application settings loaded from environment variables.

    These settings control logging, the known-values table and the
    defaults of the sweep harness.
    """

    # Runtime settings
    environment: Environment = Field(
        default_factory=lambda: Environment(os.getenv("ENVIRONMENT", "development")),
        description="Application environment",
    )
    log_level: str = Field(
        default_factory=lambda: os.getenv("LOG_LEVEL", "INFO"),
        description="Logging level",
    )

    # Bound evaluation
    known_values_path: str | None = Field(
        default_factory=lambda: os.getenv("CODEBOUNDS_KNOWN_VALUES"),
        description="CSV of known A_q(n,d) values or upper bounds; unset uses the packaged table",
    )
    delta_mode: DeltaMode = Field(
        default_factory=lambda: DeltaMode(os.getenv("CODEBOUNDS_DELTA_MODE", "floor")),
        description="Evaluation of the ball-ratio term in Bound A / Bound B",
    )

    # Sweep harness
    workers: int = Field(
        default_factory=lambda: int(os.getenv("CODEBOUNDS_WORKERS", "1")),
        ge=1,
        description="Worker processes used by sweeps",
    )
    output_format: OutputFormat = Field(
        default_factory=lambda: OutputFormat(os.getenv("CODEBOUNDS_FORMAT", "csv")),
        description="Default output format for sweep and stats",
    )

    # Exhaustive search guards
    bruteforce_limit: int = Field(
        default=2**20, description="Largest q^n accepted by the exact clique search"
    )
    systematic_limit: int = Field(
        default=2**16, description="Largest q^n accepted by the systematic-code search"
    )

    @property
    def is_development(self) -> bool:
        """Check if running in development mode."""
        return self.environment == Environment.DEVELOPMENT

    def resolved_known_values_path(self) -> Path | None:
        """Path of the known-values table, or None when it is disabled."""
        if self.known_values_path is None or self.known_values_path == "":
            return packaged_known_values_path()
        if self.known_values_path.lower() == DISABLED_PATH:
            return None
        return Path(self.known_values_path)


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
