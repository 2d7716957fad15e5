import numpy as np
import pytest
from pydantic import ValidationError

from domain.entities.ghz import DensityMatrix, GhzScenario


def test_density_matrix_reports_qubit_count():
    assert DensityMatrix(entries=np.eye(8) / 8).n_qubits == 3


def test_density_matrix_with_odd_dimension_has_no_qubit_count():
    state = DensityMatrix(entries=np.eye(3) / 3)
    with pytest.raises(ValueError, match="power of two"):
        state.n_qubits


def test_density_matrix_rejects_negative_eigenvalue():
    with pytest.raises(ValidationError, match="negative"):
        DensityMatrix(entries=np.diag([1.5, -0.5]))


def test_ghz_scenario_ranges():
    with pytest.raises(ValidationError):
        GhzScenario(N=0, p=0.5)
    with pytest.raises(ValidationError):
        GhzScenario(N=2, p=1.5)
    assert GhzScenario(N=2, p=0.0).mu == 1.0
