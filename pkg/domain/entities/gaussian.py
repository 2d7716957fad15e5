"""Gaussian continuous-variable entities."""

import math
from enum import Enum
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from domain.entities.arrays import frozen_array

SYMMETRY_TOL = 1e-12
PHYSICALITY_TOL = 1e-10
UNCERTAINTY_RTOL = 1e-12


def symplectic_form(modes: int) -> np.ndarray:
    """Block-diagonal symplectic form for ``modes`` modes ordered (x, p)."""
    return np.kron(np.eye(modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))


class TmssParams(BaseModel):
    """Parameters of the thermal two-mode squeezed state."""

    model_config = ConfigDict(frozen=True)

    z: float = Field(..., gt=0.0, le=1.0, description="Squeezing")
    theta: float = Field(..., ge=0.0, le=math.pi / 2, description="Mixing angle")
    k: float = Field(default=0.0, ge=0.0, description="Thermal excess")
    dx0: float = Field(..., gt=0.0)
    dp0: float = Field(..., gt=0.0)
    p0: float = 1.0
    m: float = Field(default=1.0, gt=0.0)
    hbar: float = Field(default=1.0, gt=0.0)

    @model_validator(mode="after")
    def _thermal_uncertainty(self) -> "TmssParams":
        target = self.hbar * (self.k + 1.0) / 2.0
        if abs(self.dx0 * self.dp0 - target) > UNCERTAINTY_RTOL * target:
            raise ValueError(
                f"dx0*dp0 = {self.dx0 * self.dp0:.15g} but hbar(k+1)/2 = {target:.15g}"
            )
        return self

    @classmethod
    def from_ratio(
        cls,
        z: float,
        theta: float,
        k: float,
        R: float,
        p0: float = 1.0,
        m: float = 1.0,
        hbar: float = 1.0,
    ) -> "TmssParams":
        """Build parameters from the ratio R = dp0/|p0|."""
        if p0 == 0.0:
            raise ValueError("p0 must be non-zero to parameterize by R")
        if R <= 0.0:
            raise ValueError(f"R must be positive, got {R}")
        dp0 = R * abs(p0)
        dx0 = hbar * (k + 1.0) / (2.0 * dp0)
        return cls(z=z, theta=theta, k=k, dx0=dx0, dp0=dp0, p0=p0, m=m, hbar=hbar)

    @property
    def R(self) -> float:
        if self.p0 == 0.0:
            return math.inf
        return self.dp0 / abs(self.p0)


class GaussianBipartiteState(BaseModel):
    """First moments and covariance of Alice's and Bob's modes.

    Ordering is (x_A, p_A, x_B, p_B).
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    mean: np.ndarray
    cov: np.ndarray
    hbar: float = Field(default=1.0, gt=0.0)

    @field_validator("mean", mode="before")
    @classmethod
    def _mean_shape(cls, value) -> np.ndarray:
        mean = frozen_array(value)
        if mean.shape != (4,):
            raise ValueError(f"Mean must have 4 entries, got shape {mean.shape}")
        return mean

    @field_validator("cov", mode="before")
    @classmethod
    def _symmetric(cls, value) -> np.ndarray:
        cov = frozen_array(value)
        if cov.shape != (4, 4):
            raise ValueError(f"Covariance must be 4x4, got shape {cov.shape}")
        if np.max(np.abs(cov - cov.T)) > SYMMETRY_TOL:
            raise ValueError("Covariance matrix is not symmetric")
        return cov

    @property
    def sigma_a(self) -> np.ndarray:
        return self.cov[:2, :2]

    @property
    def sigma_b(self) -> np.ndarray:
        return self.cov[2:, 2:]

    @property
    def sigma_ab(self) -> np.ndarray:
        return self.cov[:2, 2:]

    @property
    def mean_a(self) -> np.ndarray:
        return self.mean[:2]

    @property
    def mean_b(self) -> np.ndarray:
        return self.mean[2:]

    def uncertainty_eigenvalues(self) -> np.ndarray:
        """Eigenvalues of cov + i(hbar/2)Omega."""
        return np.linalg.eigvalsh(self.cov + 0.5j * self.hbar * symplectic_form(2))

    def is_physical(self, tol: float = PHYSICALITY_TOL) -> bool:
        return bool(self.uncertainty_eigenvalues()[0] >= -tol)


class SingleModeGaussian(BaseModel):
    """Bob's single-mode Gaussian state, ordered (x, p)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    mean: np.ndarray
    cov: np.ndarray
    hbar: float = Field(default=1.0, gt=0.0)

    @field_validator("mean", mode="before")
    @classmethod
    def _mean_shape(cls, value) -> np.ndarray:
        mean = frozen_array(value)
        if mean.shape != (2,):
            raise ValueError(f"Mean must have 2 entries, got shape {mean.shape}")
        return mean

    @field_validator("cov", mode="before")
    @classmethod
    def _symmetric(cls, value) -> np.ndarray:
        cov = frozen_array(value)
        if cov.shape != (2, 2):
            raise ValueError(f"Covariance must be 2x2, got shape {cov.shape}")
        if abs(cov[0, 1] - cov[1, 0]) > SYMMETRY_TOL:
            raise ValueError("Covariance matrix is not symmetric")
        return cov

    @model_validator(mode="after")
    def _heisenberg(self) -> "SingleModeGaussian":
        floor = self.hbar**2 / 4.0 - PHYSICALITY_TOL
        if self.determinant < floor or self.cov[0, 0] <= 0.0:
            raise ValueError(
                f"det(cov) = {self.determinant:.12g} is below hbar^2/4"
            )
        return self

    @property
    def determinant(self) -> float:
        return float(np.linalg.det(self.cov))

    @property
    def var_x(self) -> float:
        return float(self.cov[0, 0])

    @property
    def var_p(self) -> float:
        return float(self.cov[1, 1])


class Quadrature(str, Enum):
    """Quadrature measured by Alice's homodyne detector."""

    POSITION = "position"
    MOMENTUM = "momentum"

    @property
    def index(self) -> int:
        return 0 if self is Quadrature.POSITION else 1


class HomodyneSetting(BaseModel):
    """Ideal or finitely squeezed homodyne measurement."""

    model_config = ConfigDict(frozen=True)

    quadrature: Quadrature
    ideal: bool = True
    noise: Optional[float] = None

    @model_validator(mode="after")
    def _ideal_xor_noise(self) -> "HomodyneSetting":
        if self.ideal and self.noise is not None:
            raise ValueError("An ideal homodyne setting takes no noise parameter")
        if not self.ideal and (self.noise is None or self.noise <= 0.0):
            raise ValueError(f"Finite homodyne noise must be positive, got {self.noise}")
        return self

    @classmethod
    def ideal_on(cls, quadrature: Quadrature) -> "HomodyneSetting":
        return cls(quadrature=quadrature)

    @classmethod
    def noisy(cls, quadrature: Quadrature, noise: float) -> "HomodyneSetting":
        return cls(quadrature=quadrature, ideal=False, noise=noise)

    @property
    def direction(self) -> np.ndarray:
        e = np.zeros(2)
        e[self.quadrature.index] = 1.0
        return e

    @property
    def measurement_cov(self) -> np.ndarray:
        """sigma_M of the finite-noise measurement."""
        s = float(self.noise)
        if self.quadrature is Quadrature.POSITION:
            return np.diag([s, 1.0 / s])
        return np.diag([1.0 / s, s])
