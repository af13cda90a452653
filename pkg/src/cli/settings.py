"""Validated configuration model for the entdist CLI."""

import os
from pathlib import Path
from typing import Any, Dict, Optional

from pydantic import BaseModel, Field, ValidationError, field_validator

from ..domain.exceptions import ParameterRangeError

THREADS_ENV = "ENTDIST_THREADS"


class SweepSettings(BaseModel):
    step: float = Field(0.01, gt=0, le=1, description="Default grid step of figure sweeps")
    threads: int = Field(1, ge=1, description="Worker threads for sweeps and searches")


class VerifySettings(BaseModel):
    trials: int = Field(1000, ge=1, description="Monte-Carlo sample size")
    seed: int = Field(7, ge=0, description="Root seed of every random draw")
    tol: Optional[float] = Field(
        None, gt=0, description="Override of the golden-value tolerances; None keeps the defaults"
    )


class OutputSettings(BaseModel):
    directory: Path = Field(Path("./results"), description="Where figure CSVs are written")
    gnuplot: bool = Field(False, description="Also write a gnuplot script next to each CSV")


class EntDistSettings(BaseModel):
    """Top-level configuration; every section is optional."""

    sweep: SweepSettings = Field(default_factory=SweepSettings)
    verify: VerifySettings = Field(default_factory=VerifySettings)
    output: OutputSettings = Field(default_factory=OutputSettings)

    @field_validator("sweep", "verify", "output", mode="before")
    @classmethod
    def _empty_section(cls, value: Any) -> Any:
        return {} if value is None else value

    @classmethod
    def from_mapping(cls, data: Optional[Dict[str, Any]]) -> "EntDistSettings":
        """Validate a loaded config mapping, raising ParameterRangeError on bad values."""
        try:
            return cls.model_validate(data or {})
        except ValidationError as e:
            raise ParameterRangeError(f"Invalid configuration: {e}") from e


def resolve_threads(requested: int) -> int:
    """Requested thread count, capped by ENTDIST_THREADS when that is smaller."""
    raw = os.environ.get(THREADS_ENV)
    if not raw:
        return requested
    try:
        cap = int(raw)
    except ValueError:
        raise ParameterRangeError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    if cap < 1:
        raise ParameterRangeError(f"{THREADS_ENV} must be at least 1, got {cap}")
    return min(requested, cap)
