"""
Environment-backed defaults.

load_dotenv() runs on import, so a .env file at the project root can set any
BOOSTENT_* variable. Command-line flags override these defaults.
"""

import logging
import os

from dotenv import load_dotenv
from pydantic import BaseModel, Field, field_validator

from src.core.types import AngleUnit


# Load environment variables
load_dotenv()

ENV_PREFIX = "BOOSTENT_"


class EnvDefaults(BaseModel):
    """
    Defaults read from the environment.

    Attributes:
        seed: random seed for verify
        samples: random samples for verify
        workers: process count for sweep and verify
        units: unit of bare angle values
        log_level: logging level name
    """
    seed: int = 20240917
    samples: int = Field(default=1000, ge=1)
    workers: int = Field(default=1, ge=1)
    units: AngleUnit = AngleUnit.RAD
    log_level: str = "WARNING"

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        level = value.upper()
        if not isinstance(logging.getLevelName(level), int):
            raise ValueError(f"unknown log level {value!r}")
        return level


def load_defaults() -> EnvDefaults:
    """
    Build EnvDefaults from BOOSTENT_SEED, BOOSTENT_SAMPLES, BOOSTENT_WORKERS,
    BOOSTENT_UNITS and BOOSTENT_LOG_LEVEL; unset variables keep the model defaults.

    Raises:
        pydantic.ValidationError: if a variable holds an invalid value
    """
    values = {}
    for field in EnvDefaults.model_fields:
        raw = os.getenv(ENV_PREFIX + field.upper())
        if raw is not None and raw.strip():
            values[field] = raw.strip()
    return EnvDefaults(**values)
