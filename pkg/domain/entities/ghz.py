"""Noisy GHZ protocol entities."""

from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from domain.entities.arrays import check_density_matrix, frozen_array


class DensityMatrix(BaseModel):
    """Validated density matrix."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    entries: np.ndarray

    @field_validator("entries", mode="before")
    @classmethod
    def _valid(cls, value) -> np.ndarray:
        entries = frozen_array(value, dtype=complex)
        check_density_matrix(entries)
        return entries

    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])

    @property
    def n_qubits(self) -> int:
        n = int(round(np.log2(self.dim)))
        if 2**n != self.dim:
            raise ValueError(f"Dimension {self.dim} is not a power of two")
        return n


class GhzScenario(BaseModel):
    """One qubit held by Alice, N by Bob, mixed with white noise."""

    model_config = ConfigDict(frozen=True)

    N: int = Field(..., ge=1, description="Bob's qubit count")
    p: float = Field(..., ge=0.0, le=1.0, description="Visibility")
    mu: float = Field(default=1.0, gt=0.0)
    hbar: float = Field(default=1.0, gt=0.0)


class PauliSetting(str, Enum):
    """Alice's measurement basis."""

    X = "x"
    Z = "z"
