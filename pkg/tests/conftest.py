"""Shared fixtures."""

import numpy as np
import pytest

from application.services.assemblage_service import AssemblageService
from application.services.density_matrix_service import DensityMatrixService
from application.services.gaussian_service import GaussianService
from application.services.ghz_service import GhzService
from config.settings import Settings, VerificationSettings
from domain.entities.assemblage import AssemblageOutcome, DiscreteAssemblage
from domain.entities.constants import Constants, Observable

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def ket_state(*amplitudes: complex) -> np.ndarray:
    vector = np.array(amplitudes, dtype=complex)
    vector /= np.linalg.norm(vector)
    return np.outer(vector, vector.conj())


@pytest.fixture
def app_settings() -> Settings:
    """Default settings with small randomized suites."""
    return Settings(
        verification=VerificationSettings(
            lhs_models=12,
            gamma_draws=200,
            moment_draws=4,
            qfi_states=8,
            evolution_draws=6,
            mc_samples=20_000,
        )
    )


@pytest.fixture
def constants() -> Constants:
    return Constants()


@pytest.fixture
def density_service(app_settings) -> DensityMatrixService:
    return DensityMatrixService(app_settings.tolerances)


@pytest.fixture
def assemblage_service(app_settings, density_service) -> AssemblageService:
    return AssemblageService(density_service, app_settings.tolerances)


@pytest.fixture
def gaussian_service(app_settings, assemblage_service) -> GaussianService:
    return GaussianService(app_settings, assemblage_service)


@pytest.fixture
def ghz_service(app_settings, assemblage_service) -> GhzService:
    return GhzService(app_settings, assemblage_service)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


@pytest.fixture
def sigma_x() -> Observable:
    return Observable(matrix=SIGMA_X)


@pytest.fixture
def sigma_z() -> Observable:
    return Observable(matrix=SIGMA_Z)


@pytest.fixture
def half_sigma_y() -> Observable:
    return Observable(matrix=SIGMA_Y / 2)


@pytest.fixture
def half_sigma_z() -> Observable:
    return Observable(matrix=SIGMA_Z / 2)


@pytest.fixture
def bell_assemblage() -> DiscreteAssemblage:
    """Bob's states after Alice measures x or z on a maximally entangled pair."""
    plus = ket_state(1, 1)
    minus = ket_state(1, -1)
    up = ket_state(1, 0)
    down = ket_state(0, 1)
    return DiscreteAssemblage(
        dim=2,
        settings=("x", "z"),
        table={
            "x": (
                AssemblageOutcome(label="+", probability=0.5, state=plus),
                AssemblageOutcome(label="-", probability=0.5, state=minus),
            ),
            "z": (
                AssemblageOutcome(label="+", probability=0.5, state=up),
                AssemblageOutcome(label="-", probability=0.5, state=down),
            ),
        },
    )


@pytest.fixture
def product_assemblage() -> DiscreteAssemblage:
    """Two settings that leave Bob in |0> whatever Alice sees."""
    up = ket_state(1, 0)
    return DiscreteAssemblage(
        dim=2,
        settings=("a", "b"),
        table={
            "a": (
                AssemblageOutcome(label="0", probability=0.25, state=up),
                AssemblageOutcome(label="1", probability=0.75, state=up),
            ),
            "b": (AssemblageOutcome(label="0", probability=1.0, state=up),),
        },
    )

