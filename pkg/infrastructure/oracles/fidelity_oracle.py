"""Finite-difference quantum Fisher information from the Bures angle."""

from typing import Optional

import numpy as np

from application.services.density_matrix_service import DensityMatrixService
from domain.entities.constants import Constants, Observable
from domain.exceptions import SpeedLimitError

EPS_RANGE = (1e-5, 1e-3)


class FidelityQfiOracle:
    """F = 4 (D(rho(eps), rho) / eps)^2 with rho(eps) = U rho U^dagger.

    Same t-convention as the spectral formula: U = exp(-i H eps / hbar).
    """

    def __init__(
        self,
        density: Optional[DensityMatrixService] = None,
        eigenvalue_clamp: float = 1e-10,
    ):
        self.density = density or DensityMatrixService()
        self.eigenvalue_clamp = eigenvalue_clamp

    def _clamped(self, rho: np.ndarray) -> np.ndarray:
        eigenvalues, eigenvectors = self.density.eigh_psd(rho)
        eigenvalues = np.maximum(eigenvalues, self.eigenvalue_clamp)
        eigenvalues /= eigenvalues.sum()
        clamped = (eigenvectors * eigenvalues) @ eigenvectors.conj().T
        return (clamped + clamped.conj().T) / 2

    def _single(self, rho: np.ndarray, H: np.ndarray, hbar: float, eps: float) -> float:
        shifted = self.density.evolve(rho, H, eps, hbar)
        distance = self.density.bures_distance(shifted, rho)
        return 4.0 * (distance / eps) ** 2

    def qfi(
        self,
        rho: np.ndarray,
        H: Observable,
        c: Constants,
        eps: float = 1e-3,
        richardson: bool = True,
    ) -> float:
        if not EPS_RANGE[0] <= eps <= EPS_RANGE[1]:
            raise SpeedLimitError(f"eps must lie in [{EPS_RANGE[0]}, {EPS_RANGE[1]}]")
        state = self._clamped(np.asarray(rho, dtype=complex))
        coarse = self._single(state, H.matrix, c.hbar, eps)
        if not richardson:
            return coarse
        fine = self._single(state, H.matrix, c.hbar, eps / 2.0)
        return (4.0 * fine - coarse) / 3.0

    def raw_qfi(self, rho: np.ndarray, H: Observable, c: Constants, eps: float) -> float:
        """Single finite-difference step at any eps, without Richardson."""
        if eps <= 0.0:
            raise SpeedLimitError(f"eps must be positive, got {eps}")
        return self._single(
            self._clamped(np.asarray(rho, dtype=complex)), H.matrix, c.hbar, eps
        )


def qfi_finite_difference(
    rho: np.ndarray, H: Observable, c: Constants, eps: float = 1e-3, richardson: bool = False
) -> float:
    return FidelityQfiOracle().qfi(rho, H, c, eps=eps, richardson=richardson)
