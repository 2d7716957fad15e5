import numpy as np
import pytest
from pydantic import ValidationError

from conftest import ket_state
from domain.entities.assemblage import (
    AssemblageOutcome,
    DiscreteAssemblage,
    HiddenState,
    LhsModel,
)
from domain.entities.constants import Constants, Observable
from domain.entities.witness import WitnessCriterion, WitnessReport


def test_outcome_rejects_non_hermitian_state():
    with pytest.raises(ValidationError):
        AssemblageOutcome(label="0", probability=1.0, state=[[1.0, 0.5], [0.0, 0.0]])


def test_outcome_rejects_unnormalized_state():
    with pytest.raises(ValidationError):
        AssemblageOutcome(label="0", probability=1.0, state=np.eye(2))


def test_outcome_state_is_read_only():
    outcome = AssemblageOutcome(label="0", probability=1.0, state=ket_state(1, 0))
    with pytest.raises(ValueError):
        outcome.state[0, 0] = 0.0


def test_assemblage_rejects_signaling(bell_assemblage):
    table = dict(bell_assemblage.table)
    table["z"] = (AssemblageOutcome(label="+", probability=1.0, state=ket_state(1, 0)),)
    with pytest.raises(ValidationError, match="No-signaling"):
        DiscreteAssemblage(dim=2, settings=("x", "z"), table=table)


def test_assemblage_rejects_probabilities_not_summing_to_one():
    with pytest.raises(ValidationError, match="sum to"):
        DiscreteAssemblage(
            dim=2,
            settings=("x",),
            table={"x": (AssemblageOutcome(label="0", probability=0.9, state=np.eye(2) / 2),)},
        )


def test_assemblage_rejects_duplicate_and_undeclared_settings(bell_assemblage):
    with pytest.raises(ValidationError):
        DiscreteAssemblage(dim=2, settings=("x", "x"), table={"x": bell_assemblage.table["x"]})
    with pytest.raises(ValidationError):
        DiscreteAssemblage(dim=2, settings=("x",), table=dict(bell_assemblage.table))


def test_assemblage_rejects_wrong_dimension(bell_assemblage):
    with pytest.raises(ValidationError, match="expected dim"):
        DiscreteAssemblage(dim=3, settings=("x",), table={"x": bell_assemblage.table["x"]})


def test_restricted_to_keeps_order(bell_assemblage):
    restricted = bell_assemblage.restricted_to(["z"])
    assert restricted.settings == ("z",)
    assert restricted.outcomes("z") == bell_assemblage.outcomes("z")


def test_empty_assemblage_is_constructible():
    assert DiscreteAssemblage(dim=2).is_empty


def test_lhs_model_validates_weights_and_responses():
    hidden = (HiddenState(weight=0.5, state=ket_state(1, 0)), HiddenState(weight=0.5, state=ket_state(0, 1)))
    model = LhsModel(hidden=hidden, response={"x": [[1.0, 0.0], [0.5, 0.5]]})
    assert model.dim == 2
    assert model.settings == ("x",)
    np.testing.assert_allclose(model.weights, [0.5, 0.5])

    with pytest.raises(ValidationError, match="not normalized"):
        LhsModel(hidden=hidden, response={"x": [[1.0, 0.1], [0.5, 0.5]]})
    with pytest.raises(ValidationError, match="rows"):
        LhsModel(hidden=hidden, response={"x": [[1.0, 0.0]]})
    with pytest.raises(ValidationError, match="weights sum"):
        LhsModel(hidden=(HiddenState(weight=0.7, state=ket_state(1, 0)),), response={"x": [[1.0]]})


def test_observable_requires_hermitian_square_matrix():
    with pytest.raises(ValidationError):
        Observable(matrix=[[0.0, 1.0], [0.0, 0.0]])
    with pytest.raises(ValidationError):
        Observable(matrix=[1.0, 2.0])
    assert Observable(matrix=np.eye(3)).dim == 3


def test_constants_are_positive():
    assert Constants().natural
    assert not Constants(hbar=2.0).natural
    with pytest.raises(ValidationError):
        Constants(hbar=0.0)


def test_witness_report_rejects_inconsistent_violation():
    with pytest.raises(ValidationError):
        WitnessReport(
            criterion=WitnessCriterion.MANDELSTAM_TAMM,
            measured=1.0,
            lhs_bound=1.0,
            gamma=1.5,
            violated=True,
        )
    with pytest.raises(ValidationError):
        WitnessReport(
            criterion=WitnessCriterion.GEOMETRIC,
            measured=1.0,
            lhs_bound=1.0,
            gamma=0.5,
            violated=True,
            degenerate=True,
        )
    with pytest.raises(ValidationError):
        WitnessReport(
            criterion=WitnessCriterion.QUANTUM_FISHER,
            measured=1.0,
            lhs_bound=1.0,
            gamma=float("nan"),
            violated=False,
        )


def test_violation_needs_gamma_clearly_below_one():
    fields = dict(criterion=WitnessCriterion.GEOMETRIC, measured=1.0, lhs_bound=1.0)
    with pytest.raises(ValidationError):
        WitnessReport(**fields, gamma=1.0 - 1e-13, violated=True)
    assert WitnessReport(**fields, gamma=1.0 - 1e-13, violated=False).gamma < 1.0
    assert WitnessReport(**fields, gamma=1.0 - 1e-11, violated=True).violated
