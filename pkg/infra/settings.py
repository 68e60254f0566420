"""
Process-wide settings read from the environment.

Values come from `REM_*` environment variables, optionally seeded from a
`.env` file in the working directory. CLI flags override them per run.
"""

from __future__ import annotations

import os
from functools import lru_cache

from dotenv import load_dotenv
from pydantic import BaseModel, Field

from infra.logger import DEFAULT_LOGFILE

_ENV_PREFIX = "REM_"


class Settings(BaseModel):
    log_level: str = "INFO"
    log_json: bool = False
    # Empty string disables the file handler.
    log_file: str = str(DEFAULT_LOGFILE)
    naive_cap: int = Field(default=10_000_000, ge=1)
    default_engine: str = "gj"
    bench_repeat: int = Field(default=10, ge=1)
    service_name: str = "rem"

    @classmethod
    def from_env(cls, environ: dict[str, str] | None = None) -> "Settings":
        """Build settings from `REM_*` variables; unknown keys are ignored."""
        environ = os.environ if environ is None else environ
        values = {
            name: environ[_ENV_PREFIX + name.upper()]
            for name in cls.model_fields
            if _ENV_PREFIX + name.upper() in environ
        }
        return cls.model_validate(values)


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Load `.env` once and return the cached settings."""
    load_dotenv()
    return Settings.from_env()
