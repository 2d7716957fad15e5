"""Helpers for numpy-backed entity fields."""

import numpy as np


def frozen_array(value, dtype=float) -> np.ndarray:
    """Copy ``value`` into a read-only array of the given dtype."""
    array = np.array(value, dtype=dtype, copy=True)
    array.setflags(write=False)
    return array


def hermitian_error(matrix: np.ndarray) -> float:
    """Max-norm distance between a matrix and its adjoint."""
    if matrix.size == 0:
        return 0.0
    return float(np.max(np.abs(matrix - matrix.conj().T)))


def check_density_matrix(
    matrix: np.ndarray,
    hermitian_tol: float = 1e-12,
    psd_tol: float = 1e-10,
    trace_tol: float = 1e-10,
) -> None:
    """Raise ValueError unless ``matrix`` is a normalized density matrix."""
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError(f"Density matrix must be square, got shape {matrix.shape}")
    herm = hermitian_error(matrix)
    if herm > hermitian_tol:
        raise ValueError(f"Density matrix is not Hermitian (deviation {herm:.3e})")
    trace = complex(np.trace(matrix))
    if abs(trace - 1.0) > trace_tol:
        raise ValueError(f"Density matrix trace is {trace.real:.12g}, expected 1")
    lowest = float(np.linalg.eigvalsh((matrix + matrix.conj().T) / 2)[0])
    if lowest < -psd_tol:
        raise ValueError(f"Density matrix has negative eigenvalue {lowest:.3e}")
