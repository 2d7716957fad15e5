"""Linear-algebra primitives on finite-dimensional density matrices."""

import logging
import math
from typing import Optional

import numpy as np
from scipy.linalg import expm

from config.settings import ToleranceSettings
from domain.exceptions import DimensionMismatchError, NonPhysicalStateError

logger = logging.getLogger(__name__)

# Fidelity roots this close to one are reported as identical states
FIDELITY_UNITY_CUTOFF = 1e-14


class DensityMatrixService:
    """Expectation values, evolution, QFI and Bures geometry."""

    def __init__(self, tolerances: Optional[ToleranceSettings] = None):
        self.tolerances = tolerances or ToleranceSettings()

    @staticmethod
    def _check_dims(rho: np.ndarray, operator: np.ndarray) -> None:
        if rho.shape != operator.shape:
            raise DimensionMismatchError(
                f"State has shape {rho.shape} but operator has shape {operator.shape}"
            )

    def expectation(self, rho: np.ndarray, operator: np.ndarray) -> float:
        """Real part of Tr[rho O]."""
        self._check_dims(rho, operator)
        return float(np.real(np.trace(rho @ operator)))

    def variance(self, rho: np.ndarray, operator: np.ndarray) -> float:
        mean = self.expectation(rho, operator)
        second = self.expectation(rho, operator @ operator)
        return max(second - mean**2, 0.0)

    def commutator_rate(
        self, rho: np.ndarray, hamiltonian: np.ndarray, operator: np.ndarray, hbar: float
    ) -> float:
        """<(i/hbar)[H, M]>, the Ehrenfest time derivative of <M> at t = 0."""
        self._check_dims(rho, operator)
        self._check_dims(rho, hamiltonian)
        generator = 1j * (hamiltonian @ operator - operator @ hamiltonian) / hbar
        return self.expectation(rho, generator)

    @staticmethod
    def propagator(hamiltonian: np.ndarray, dt: float, hbar: float) -> np.ndarray:
        return expm(-1j * hamiltonian * dt / hbar)

    def evolve(
        self, rho: np.ndarray, hamiltonian: np.ndarray, dt: float, hbar: float
    ) -> np.ndarray:
        """U rho U^dagger with U = exp(-i H dt / hbar)."""
        self._check_dims(rho, hamiltonian)
        unitary = self.propagator(hamiltonian, dt, hbar)
        evolved = unitary @ rho @ unitary.conj().T
        return (evolved + evolved.conj().T) / 2

    def eigh_psd(self, rho: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Eigendecomposition of a state, rejecting negative spectra."""
        eigenvalues, eigenvectors = np.linalg.eigh((rho + rho.conj().T) / 2)
        if eigenvalues[0] < -self.tolerances.psd:
            raise NonPhysicalStateError(
                f"State has negative eigenvalue {eigenvalues[0]:.3e}"
            )
        return np.clip(eigenvalues, 0.0, None), eigenvectors

    def sqrt_psd(self, rho: np.ndarray) -> np.ndarray:
        eigenvalues, eigenvectors = self.eigh_psd(rho)
        roots = np.sqrt(eigenvalues)
        roots[eigenvalues < self.tolerances.fidelity_eigenvalue] = 0.0
        return (eigenvectors * roots) @ eigenvectors.conj().T

    def spectral_qfi(self, rho: np.ndarray, hamiltonian: np.ndarray, hbar: float) -> float:
        """QFI for t under exp(-iHt/hbar); pure states give 4 Var(H)/hbar^2."""
        self._check_dims(rho, hamiltonian)
        eigenvalues, eigenvectors = self.eigh_psd(rho)
        h_eig = eigenvectors.conj().T @ hamiltonian @ eigenvectors
        sums = eigenvalues[:, None] + eigenvalues[None, :]
        diffs = eigenvalues[:, None] - eigenvalues[None, :]
        mask = sums > self.tolerances.qfi_eigenvalue
        terms = np.zeros_like(sums)
        terms[mask] = diffs[mask] ** 2 / sums[mask] * np.abs(h_eig[mask]) ** 2
        return float(2.0 / hbar**2 * np.sum(terms))

    def fidelity_root(self, rho: np.ndarray, sigma: np.ndarray) -> float:
        """Tr sqrt(sqrt(rho) sigma sqrt(rho)) as the trace norm of sqrt(rho) sqrt(sigma)."""
        if rho.shape != sigma.shape:
            raise DimensionMismatchError(
                f"Cannot compare states of shapes {rho.shape} and {sigma.shape}"
            )
        product = self.sqrt_psd(rho) @ self.sqrt_psd(sigma)
        value = float(np.sum(np.linalg.svd(product, compute_uv=False)))
        return min(max(value, 0.0), 1.0)

    def bures_distance(self, rho: np.ndarray, sigma: np.ndarray) -> float:
        """Bures angle arccos of the fidelity root, in [0, pi/2]."""
        root = self.fidelity_root(rho, sigma)
        if root > 1.0 - FIDELITY_UNITY_CUTOFF:
            return 0.0
        return math.acos(root)

    @staticmethod
    def trace_out_first_qubit(rho: np.ndarray) -> np.ndarray:
        """Partial trace over the leading qubit."""
        rest = rho.shape[0] // 2
        return np.einsum("ajak->jk", rho.reshape(2, rest, 2, rest))
