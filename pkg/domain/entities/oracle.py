"""Oracle configuration and result entities."""

import math
from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from domain.entities.arrays import frozen_array

GAUSSIAN_NORMALIZATION = math.sqrt(2.0 * math.pi)


class MomentFunctional(str, Enum):
    """Functionals of Bob's conditional state averaged over Alice's outcome."""

    VAR_X = "var_x"
    VAR_P = "var_p"
    FOURTH_P = "fourth_p"
    ABS_MEAN_P = "abs_mean_p"


class OracleKind(str, Enum):
    """Moment oracle implementations."""

    QUADRATURE = "quadrature"
    MONTE_CARLO = "monte_carlo"


class QuadratureRule(BaseModel):
    """Gauss-Hermite rule for the weight exp(-x^2/2)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    nodes: np.ndarray
    weights: np.ndarray
    order: int = Field(..., ge=20)

    @field_validator("nodes", "weights", mode="before")
    @classmethod
    def _freeze(cls, value) -> np.ndarray:
        return frozen_array(value)

    @model_validator(mode="after")
    def _normalized(self) -> "QuadratureRule":
        if self.nodes.shape != (self.order,) or self.weights.shape != (self.order,):
            raise ValueError(f"Rule of order {self.order} needs {self.order} nodes")
        if np.any(self.weights <= 0.0):
            raise ValueError("Quadrature weights must be positive")
        total = float(np.sum(self.weights))
        if abs(total - GAUSSIAN_NORMALIZATION) > 1e-12 * GAUSSIAN_NORMALIZATION:
            raise ValueError(f"Weights sum to {total:.15g}, expected sqrt(2 pi)")
        return self

    @classmethod
    def hermite_e(cls, order: int) -> "QuadratureRule":
        nodes, weights = np.polynomial.hermite_e.hermegauss(order)
        return cls(nodes=nodes, weights=weights, order=order)

    def expectation(self, values: np.ndarray) -> float:
        """E[f(X)] for X ~ N(0, 1), given f at the nodes."""
        return float(np.dot(self.weights, values) / GAUSSIAN_NORMALIZATION)


class McConfig(BaseModel):
    """Monte Carlo sample size and seed."""

    model_config = ConfigDict(frozen=True)

    samples: int = Field(default=1_000_000, ge=10_000)
    seed: int = Field(default=0, ge=0, lt=2**64)


class MomentEstimate(BaseModel):
    """Oracle estimate of one conditional moment."""

    model_config = ConfigDict(frozen=True)

    functional: MomentFunctional
    value: float
    stderr: float = 0.0
    evaluations: int = 0
