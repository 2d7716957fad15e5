"""Seeded random states, operators and local hidden state models."""

import math
from typing import Optional, Sequence

import numpy as np

from domain.entities.assemblage import HiddenState, LhsModel
from domain.entities.constants import Observable
from domain.entities.gaussian import TmssParams


def random_density_matrix(
    dim: int, rng: np.random.Generator, rank: Optional[int] = None
) -> np.ndarray:
    """Ginibre-distributed mixed state; full rank unless ``rank`` is given."""
    columns = rank or dim
    ginibre = rng.standard_normal((dim, columns)) + 1j * rng.standard_normal((dim, columns))
    rho = ginibre @ ginibre.conj().T
    rho = (rho + rho.conj().T) / 2
    return rho / np.real(np.trace(rho))


def random_pure_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    vector = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    vector /= np.linalg.norm(vector)
    return np.outer(vector, vector.conj())


def random_hermitian(dim: int, rng: np.random.Generator, scale: float = 1.0) -> Observable:
    matrix = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return Observable(matrix=scale * (matrix + matrix.conj().T) / 2)


def random_lhs_model(
    dim: int,
    rng: np.random.Generator,
    n_hidden: int = 3,
    settings: Sequence[str] = ("x", "z"),
    n_outcomes: int = 2,
    pure_fraction: float = 0.5,
) -> LhsModel:
    """Random hidden states with random (stochastic) response functions."""
    weights = rng.dirichlet(np.ones(n_hidden))
    hidden = []
    for weight in weights:
        state = (
            random_pure_state(dim, rng)
            if rng.random() < pure_fraction
            else random_density_matrix(dim, rng)
        )
        hidden.append(HiddenState(weight=float(weight), state=state))
    # Renormalize away the rounding of the Dirichlet draw
    total = sum(item.weight for item in hidden)
    hidden = [HiddenState(weight=item.weight / total, state=item.state) for item in hidden]
    response = {
        setting: rng.dirichlet(np.ones(n_outcomes), size=n_hidden) for setting in settings
    }
    return LhsModel(hidden=tuple(hidden), response=response)


def random_tmss_params(rng: np.random.Generator, units: bool = True) -> TmssParams:
    """Random squeezing, mixing, thermal excess and R; random p0, m, hbar when ``units``."""
    p0 = float(rng.uniform(0.5, 2.0) * rng.choice([-1.0, 1.0])) if units else 1.0
    return TmssParams.from_ratio(
        z=float(rng.uniform(0.05, 1.0)),
        theta=float(rng.uniform(0.0, math.pi / 2)),
        k=float(rng.uniform(0.0, 3.0)),
        R=float(rng.uniform(0.05, 3.0)),
        p0=p0,
        m=float(rng.uniform(0.5, 2.0)) if units else 1.0,
        hbar=float(rng.uniform(0.5, 2.0)) if units else 1.0,
    )
