"""Pydantic schemas for command-line requests."""

from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, Field

from domain.entities.sweep import Scenario

# Parameters that accept a single value or a min/max/steps range
SWEPT_PARAMETERS = ("z", "r", "theta", "k", "n", "p", "dt")


class RangeFlags(BaseModel):
    """Flags given for one parameter; unset fields fall back to the config file."""

    value: Optional[float] = None
    min: Optional[float] = None
    max: Optional[float] = None
    steps: Optional[int] = Field(default=None, ge=1)

    @property
    def is_empty(self) -> bool:
        return self.value is None and self.min is None and self.max is None and self.steps is None


class SweepRequest(BaseModel):
    """A sweep as typed on the command line."""

    scenario: Scenario
    config_path: Optional[Path] = None
    ranges: dict[str, RangeFlags] = Field(default_factory=dict)
    d_mean: Optional[float] = None
    output: Optional[str] = None
    seed: Optional[int] = None
    hbar: Optional[float] = None
    m: Optional[float] = None
    mu: Optional[float] = None
    gamma_convention: Optional[Literal["printed", "physical"]] = None
    printed_cross_prefactor: bool = False
    closed_form_only: bool = False


class VerifyRequest(BaseModel):
    """A verification run as typed on the command line."""

    output: str = "-"
    seed: Optional[int] = None
    checks: Optional[list[str]] = None
    printed_cross_prefactor: bool = False
