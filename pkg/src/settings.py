"""
Runtime Settings
================

Environment-driven configuration. Values are read once (after ``load_dotenv``)
and validated with pydantic:

    LRC_ENUMERATION_CAP    maximum codeword evaluations for brute force (10^7)
    LRC_ENUMERATION_CHUNK  messages per vectorised enumeration chunk (65536)
    LRC_LOG_LEVEL          root log level used by the CLI (WARNING)

CLI flags (``--cap``, ``--log-level``) override these per invocation.
"""

import os
from functools import lru_cache
from typing import Literal

from dotenv import load_dotenv
from pydantic import BaseModel, Field

load_dotenv()

LogLevel = Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]


class Settings(BaseModel):
    """Validated runtime configuration."""

    enumeration_cap: int = Field(default=10_000_000, ge=1, description="Brute-force enumeration cap")
    enumeration_chunk: int = Field(default=65_536, ge=1, description="Messages per numpy chunk")
    log_level: LogLevel = Field(default="WARNING", description="Root log level for the CLI")

    @classmethod
    def from_env(cls) -> "Settings":
        values = {}
        if "LRC_ENUMERATION_CAP" in os.environ:
            values["enumeration_cap"] = os.environ["LRC_ENUMERATION_CAP"]
        if "LRC_ENUMERATION_CHUNK" in os.environ:
            values["enumeration_chunk"] = os.environ["LRC_ENUMERATION_CHUNK"]
        if "LRC_LOG_LEVEL" in os.environ:
            values["log_level"] = os.environ["LRC_LOG_LEVEL"].upper()
        return cls(**values)


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return Settings.from_env()
