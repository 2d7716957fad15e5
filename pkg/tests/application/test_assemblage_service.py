import math

import numpy as np
import pytest

from conftest import ket_state
from domain.entities.assemblage import AssemblageOutcome, DiscreteAssemblage, HiddenState, LhsModel
from domain.entities.constants import Constants, Observable
from domain.entities.witness import WitnessCriterion
from domain.exceptions import (
    DimensionMismatchError,
    EmptyAssemblageError,
    InvalidModelError,
    MismatchedAssemblageError,
    SpeedLimitError,
)
from infrastructure.oracles.random_ensembles import random_hermitian, random_lhs_model


def test_bell_assemblage_violates_mandelstam_tamm(
    assemblage_service, bell_assemblage, sigma_x, half_sigma_y, constants
):
    report = assemblage_service.mt_witness(bell_assemblage, sigma_x, half_sigma_y, constants)
    assert report.criterion is WitnessCriterion.MANDELSTAM_TAMM
    assert report.gamma == pytest.approx(0.0, abs=1e-7)
    assert report.violated
    assert report.lhs_bound == pytest.approx(1.0)
    assert report.chosen_setting_min == "x"
    assert report.chosen_setting_max == "z"


def test_bell_assemblage_violates_qfi_witness(
    assemblage_service, bell_assemblage, half_sigma_z, constants
):
    report = assemblage_service.qfi_witness(bell_assemblage, half_sigma_z, constants)
    assert report.measured == pytest.approx(1.0, rel=1e-12)
    assert report.lhs_bound == pytest.approx(0.0, abs=1e-15)
    assert report.violated
    assert report.chosen_setting_max == "x"
    assert report.chosen_setting_min == "z"


def test_product_assemblage_is_degenerate(
    assemblage_service, product_assemblage, sigma_x, half_sigma_z, constants
):
    report = assemblage_service.mt_witness(product_assemblage, sigma_x, half_sigma_z, constants)
    assert report.degenerate
    assert not report.violated
    assert math.isinf(report.gamma)

    qfi = assemblage_service.qfi_witness(product_assemblage, half_sigma_z, constants)
    assert qfi.degenerate and not qfi.violated


def test_conditional_variance_ties_go_to_first_setting(
    assemblage_service, product_assemblage, sigma_x
):
    value, setting = assemblage_service.conditional_variance(product_assemblage, sigma_x)
    assert value == pytest.approx(1.0)
    assert setting == "a"


def test_single_setting_evaluation(assemblage_service, bell_assemblage, sigma_x):
    value, setting = assemblage_service.conditional_variance(bell_assemblage, sigma_x, setting="z")
    assert (value, setting) == (pytest.approx(1.0), "z")
    with pytest.raises(SpeedLimitError, match="Unknown setting"):
        assemblage_service.conditional_variance(bell_assemblage, sigma_x, setting="y")


def test_empty_and_mismatched_inputs(assemblage_service, bell_assemblage, sigma_x):
    with pytest.raises(EmptyAssemblageError):
        assemblage_service.conditional_variance(DiscreteAssemblage(dim=2), sigma_x)
    with pytest.raises(DimensionMismatchError):
        assemblage_service.conditional_variance(bell_assemblage, Observable(matrix=np.eye(3)))


def test_displacement_time_bound(assemblage_service, constants):
    assert assemblage_service.displacement_time_bound(1.0, 0.25, 0.25, constants) == pytest.approx(2.0)
    assert assemblage_service.displacement_time_bound(
        1.0, 0.25, 0.25, Constants(hbar=3.0)
    ) == pytest.approx(6.0)
    with pytest.raises(SpeedLimitError):
        assemblage_service.displacement_time_bound(1.0, 0.0, 0.25, constants)


def test_mean_shift_after_quarter_turn(
    assemblage_service, bell_assemblage, sigma_x, half_sigma_z, constants
):
    evolved = assemblage_service.evolve_assemblage(bell_assemblage, half_sigma_z, math.pi / 2, constants)
    shift, setting = assemblage_service.conditional_mean_shift(bell_assemblage, evolved, sigma_x)
    assert shift == pytest.approx(1.0, rel=1e-12)
    assert setting == "x"
    assert assemblage_service.reduced_mean_shift(bell_assemblage, evolved, sigma_x) == pytest.approx(
        0.0, abs=1e-12
    )


def test_mismatched_assemblages_are_rejected(assemblage_service, bell_assemblage, sigma_x):
    with pytest.raises(MismatchedAssemblageError):
        assemblage_service.conditional_mean_shift(
            bell_assemblage, bell_assemblage.restricted_to(["x"]), sigma_x
        )


def test_geometric_bound_on_bell_assemblage(
    assemblage_service, bell_assemblage, half_sigma_z, constants
):
    dt = 0.1
    evolved = assemblage_service.evolve_assemblage(bell_assemblage, half_sigma_z, dt, constants)
    report = assemblage_service.geometric_time_bound(
        bell_assemblage, evolved, half_sigma_z, dt, constants
    )
    # z outcomes are energy eigenstates, so the minimal energy variance vanishes
    assert report.criterion is WitnessCriterion.GEOMETRIC
    assert report.chosen_setting_max == "x"
    assert report.chosen_setting_min == "z"
    assert report.violated
    assert math.isinf(report.lhs_bound)


def test_geometric_bound_without_motion_is_degenerate(
    assemblage_service, product_assemblage, half_sigma_z, constants
):
    evolved = assemblage_service.evolve_assemblage(product_assemblage, half_sigma_z, 0.5, constants)
    report = assemblage_service.geometric_time_bound(
        product_assemblage, evolved, half_sigma_z, 0.5, constants
    )
    assert not report.violated
    assert report.lhs_bound == 0.0
    with pytest.raises(SpeedLimitError):
        assemblage_service.geometric_time_bound(
            product_assemblage, evolved, half_sigma_z, 0.0, constants
        )


def test_geometric_bound_on_single_pure_state_never_violates(
    assemblage_service, half_sigma_z, constants
):
    plus = DiscreteAssemblage(
        dim=2,
        settings=("only",),
        table={"only": (AssemblageOutcome(label="0", probability=1.0, state=ket_state(1, 1)),)},
    )
    for dt in np.geomspace(1e-7, math.pi, 400):
        evolved = assemblage_service.evolve_assemblage(plus, half_sigma_z, float(dt), constants)
        report = assemblage_service.geometric_time_bound(
            plus, evolved, half_sigma_z, float(dt), constants
        )
        assert not report.violated, dt
        # |+> saturates the bound, which is then resolved well above round-off
        if dt >= 1e-2:
            assert report.lhs_bound == pytest.approx(dt, rel=1e-9)


def test_reduced_state_rejects_unknown_setting(assemblage_service, bell_assemblage):
    np.testing.assert_allclose(
        assemblage_service.reduced_state(bell_assemblage, "z"), np.eye(2) / 2, atol=1e-12
    )
    with pytest.raises(SpeedLimitError, match="Unknown setting"):
        assemblage_service.reduced_state(bell_assemblage, "y")


def test_assemblage_from_lhs_model(assemblage_service):
    hidden = (HiddenState(weight=0.5, state=ket_state(1, 0)), HiddenState(weight=0.5, state=ket_state(0, 1)))
    model = LhsModel(hidden=hidden, response={"x": [[1.0, 0.0], [0.0, 1.0]], "y": [[1.0, 0.0], [1.0, 0.0]]})

    asm = assemblage_service.assemblage_from_lhs(model, outcomes={"x": ["up", "down"]})
    assert asm.settings == ("x", "y")
    up, down = asm.outcomes("x")
    assert (up.label, down.label) == ("up", "down")
    assert up.probability == pytest.approx(0.5)
    np.testing.assert_allclose(up.state, ket_state(1, 0), atol=1e-15)
    # Zero-probability outcomes are pruned
    assert [outcome.label for outcome in asm.outcomes("y")] == ["0"]
    np.testing.assert_allclose(asm.outcomes("y")[0].state, np.eye(2) / 2, atol=1e-15)

    with pytest.raises(InvalidModelError):
        assemblage_service.assemblage_from_lhs(model, settings=["z"])
    with pytest.raises(InvalidModelError):
        assemblage_service.assemblage_from_lhs(model, outcomes={"x": ["only"]})


def test_lhs_assemblage_never_violates(assemblage_service, rng, constants):
    for _ in range(10):
        model = random_lhs_model(3, rng, n_hidden=3, settings=("a", "b", "c"))
        asm = assemblage_service.assemblage_from_lhs(model)
        M, H = random_hermitian(3, rng), random_hermitian(3, rng)
        assert not assemblage_service.mt_witness(asm, M, H, constants).violated
        assert not assemblage_service.qfi_witness(asm, H, constants).violated


def test_reduced_state_is_setting_independent(assemblage_service, bell_assemblage):
    np.testing.assert_allclose(assemblage_service.reduced_state(bell_assemblage), np.eye(2) / 2, atol=1e-15)
    np.testing.assert_allclose(
        assemblage_service.reduced_state(bell_assemblage, "z"), np.eye(2) / 2, atol=1e-15
    )
