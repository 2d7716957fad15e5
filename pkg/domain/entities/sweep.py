"""Sweep configuration and result rows."""

from enum import Enum
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from domain.entities.constants import Constants


class Scenario(str, Enum):
    """Sweep scenarios exposed on the command line."""

    FREE_PARTICLE = "free-particle"
    DISPLACEMENT = "displacement"
    GHZ = "ghz"


class ParameterRange(BaseModel):
    """Inclusive linear grid."""

    model_config = ConfigDict(frozen=True)

    min: float
    max: float
    steps: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def _ordered(self) -> "ParameterRange":
        if self.max < self.min:
            raise ValueError(f"Empty range: max {self.max} < min {self.min}")
        if self.steps == 1 and self.max != self.min:
            raise ValueError("A single-step range needs min == max")
        return self

    @classmethod
    def single(cls, value: float) -> "ParameterRange":
        return cls(min=value, max=value, steps=1)

    def values(self) -> list[float]:
        if self.steps == 1:
            return [float(self.min)]
        return [float(v) for v in np.linspace(self.min, self.max, self.steps)]


class SweepConfig(BaseModel):
    """Everything a sweep needs; ranges absent from a scenario are ignored."""

    model_config = ConfigDict(frozen=True)

    scenario: Scenario
    z: Optional[ParameterRange] = None
    r: Optional[ParameterRange] = None
    theta: Optional[ParameterRange] = None
    k: Optional[ParameterRange] = None
    n: Optional[ParameterRange] = None
    p: Optional[ParameterRange] = None
    dt: Optional[ParameterRange] = None
    d_mean: float = 1.0
    output: str = "-"
    seed: int = 0
    units: Constants = Field(default_factory=Constants)
    gamma_convention: Literal["printed", "physical"] = "printed"
    printed_cross_prefactor: bool = False
    closed_form_only: bool = False


class FreeParticleRow(BaseModel):
    z: float
    R: float
    theta: float
    k: float
    gamma: float
    violation: bool


class DisplacementRow(BaseModel):
    z: float
    theta: float
    k: float
    bound: float
    actual: float
    violation: bool


class GhzRow(BaseModel):
    N: int
    p: float
    mu: float
    p_c: float
    time_bound: float
    qfi_closed: float
    qfi_dense: float
    var_bound: float
    var_dense: float
    violation_at_dt: bool
