"""Assemblage and local hidden state entities."""

from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from domain.entities.arrays import check_density_matrix, frozen_array

PROBABILITY_TOL = 1e-10
NO_SIGNALING_TOL = 1e-9
LHS_NORMALIZATION_TOL = 1e-12


class AssemblageOutcome(BaseModel):
    """One outcome of one setting: label, probability and Bob's conditional state."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    label: str
    probability: float = Field(..., ge=0.0, le=1.0 + PROBABILITY_TOL)
    state: np.ndarray

    @field_validator("state", mode="before")
    @classmethod
    def _density_matrix(cls, value) -> np.ndarray:
        state = frozen_array(value, dtype=complex)
        check_density_matrix(state)
        return state

    @property
    def weighted_state(self) -> np.ndarray:
        return self.probability * self.state


class DiscreteAssemblage(BaseModel):
    """Per-setting outcome table of Bob's post-selected ensembles."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    dim: int = Field(..., ge=1)
    settings: tuple[str, ...] = ()
    table: dict[str, tuple[AssemblageOutcome, ...]] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_invariants(self) -> "DiscreteAssemblage":
        if len(set(self.settings)) != len(self.settings):
            raise ValueError(f"Duplicate setting labels in {self.settings}")
        if set(self.table) != set(self.settings):
            raise ValueError("Outcome table keys must match the declared settings")

        reduced: Optional[np.ndarray] = None
        for setting in self.settings:
            outcomes = self.table[setting]
            if not outcomes:
                raise ValueError(f"Setting '{setting}' has no outcomes")
            total = sum(outcome.probability for outcome in outcomes)
            if abs(total - 1.0) > PROBABILITY_TOL:
                raise ValueError(
                    f"Probabilities of setting '{setting}' sum to {total:.12g}"
                )
            for outcome in outcomes:
                if outcome.state.shape != (self.dim, self.dim):
                    raise ValueError(
                        f"Outcome '{outcome.label}' of '{setting}' has shape "
                        f"{outcome.state.shape}, expected dim {self.dim}"
                    )
            marginal = sum(outcome.weighted_state for outcome in outcomes)
            if reduced is None:
                reduced = marginal
            elif np.max(np.abs(marginal - reduced)) > NO_SIGNALING_TOL:
                raise ValueError(
                    f"No-signaling violated: setting '{setting}' changes Bob's "
                    "reduced state"
                )
        return self

    @property
    def is_empty(self) -> bool:
        return not self.settings

    def outcomes(self, setting: str) -> tuple[AssemblageOutcome, ...]:
        return self.table[setting]

    def restricted_to(self, settings: list[str]) -> "DiscreteAssemblage":
        """Sub-assemblage keeping only ``settings`` in the given order."""
        return DiscreteAssemblage(
            dim=self.dim,
            settings=tuple(settings),
            table={setting: self.table[setting] for setting in settings},
        )


class HiddenState(BaseModel):
    """Weighted hidden state sigma_lambda of a local hidden state model."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    weight: float = Field(..., ge=0.0)
    state: np.ndarray

    @field_validator("state", mode="before")
    @classmethod
    def _density_matrix(cls, value) -> np.ndarray:
        state = frozen_array(value, dtype=complex)
        check_density_matrix(state)
        return state


class LhsModel(BaseModel):
    """Finite local hidden state model.

    ``response[X]`` has one row per hidden state and one column per outcome of
    setting ``X``; entry (l, a) is p(a|X, lambda_l).
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    hidden: tuple[HiddenState, ...]
    response: dict[str, np.ndarray]

    @field_validator("response", mode="before")
    @classmethod
    def _freeze_response(cls, value) -> dict[str, np.ndarray]:
        return {str(key): frozen_array(table) for key, table in dict(value).items()}

    @model_validator(mode="after")
    def _check_normalization(self) -> "LhsModel":
        if not self.hidden:
            raise ValueError("LHS model needs at least one hidden state")
        total = sum(item.weight for item in self.hidden)
        if abs(total - 1.0) > LHS_NORMALIZATION_TOL:
            raise ValueError(f"Hidden-state weights sum to {total:.15g}")
        dims = {item.state.shape[0] for item in self.hidden}
        if len(dims) != 1:
            raise ValueError(f"Hidden states have mixed dimensions {sorted(dims)}")
        for setting, table in self.response.items():
            if table.ndim != 2 or table.shape[0] != len(self.hidden):
                raise ValueError(
                    f"Response of '{setting}' must have {len(self.hidden)} rows, "
                    f"got shape {table.shape}"
                )
            if np.any(table < 0.0) or np.any(table > 1.0):
                raise ValueError(f"Response of '{setting}' leaves [0, 1]")
            sums = table.sum(axis=1)
            if np.max(np.abs(sums - 1.0)) > LHS_NORMALIZATION_TOL:
                raise ValueError(f"Response rows of '{setting}' are not normalized")
        return self

    @property
    def dim(self) -> int:
        return int(self.hidden[0].state.shape[0])

    @property
    def settings(self) -> tuple[str, ...]:
        return tuple(self.response)

    @property
    def weights(self) -> np.ndarray:
        return np.array([item.weight for item in self.hidden])
