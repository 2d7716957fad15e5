"""Physical constants and observables."""

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from domain.entities.arrays import frozen_array, hermitian_error


class Constants(BaseModel):
    """Units record threaded through every closed form."""

    model_config = ConfigDict(frozen=True)

    hbar: float = Field(default=1.0, gt=0, description="Action units")
    m: float = Field(default=1.0, gt=0, description="Mass units")
    mu: float = Field(default=1.0, gt=0, description="Energy units")

    @property
    def natural(self) -> bool:
        return self.hbar == 1.0 and self.m == 1.0 and self.mu == 1.0


class Observable(BaseModel):
    """Hermitian operator on Bob's finite-dimensional space."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    matrix: np.ndarray
    units: str = ""

    @field_validator("matrix", mode="before")
    @classmethod
    def _hermitian(cls, value) -> np.ndarray:
        matrix = frozen_array(value, dtype=complex)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError(f"Observable must be a square matrix, got {matrix.shape}")
        deviation = hermitian_error(matrix)
        if deviation > 1e-12:
            raise ValueError(f"Observable is not Hermitian (deviation {deviation:.3e})")
        return matrix

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])
