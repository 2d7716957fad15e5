import math

import numpy as np
import pytest

from conftest import ket_state
from domain.entities.ghz import GhzScenario, PauliSetting
from domain.exceptions import DenseSizeError, SpeedLimitError


def test_critical_visibility_of_one_qubit(ghz_service):
    assert ghz_service.critical_visibility(1) == pytest.approx((math.sqrt(17.0) - 1.0) / 8.0, rel=1e-14)
    with pytest.raises(SpeedLimitError):
        ghz_service.critical_visibility(0)


@pytest.mark.parametrize("N", [1, 2, 5, 10])
def test_critical_visibility_is_a_root(ghz_service, N):
    p_c = ghz_service.critical_visibility(N)
    assert 0.0 < p_c < 1.0
    assert ghz_service.critical_visibility_residual(N, p_c) == pytest.approx(0.0, abs=1e-12)


def test_canonical_crossing_lies_above_printed_one(ghz_service):
    canonical = ghz_service.canonical_critical_visibility(2)
    assert canonical == pytest.approx(0.595, abs=1e-3)
    assert canonical > ghz_service.critical_visibility(2)


def test_time_bound_values(ghz_service):
    assert ghz_service.ghz_time_bound(GhzScenario(N=1, p=0.5)) == pytest.approx(0.5773502691896, rel=1e-12)
    assert ghz_service.ghz_time_bound(GhzScenario(N=1, p=0.5, hbar=2.0, mu=4.0)) == pytest.approx(
        0.5773502691896 / 2, rel=1e-12
    )
    assert math.isinf(ghz_service.ghz_time_bound(GhzScenario(N=3, p=1.0)))
    assert ghz_service.ghz_time_bound(GhzScenario(N=3, p=0.0)) == 0.0


def test_energy_variance_forms(ghz_service):
    scenario = GhzScenario(N=3, p=0.5)
    assert ghz_service.ghz_energy_variance_exact(scenario) == pytest.approx(0.9375)
    assert ghz_service.ghz_energy_variance_bound(scenario) == pytest.approx(0.375)
    assert ghz_service.ghz_energy_variance_dense(scenario) == pytest.approx(0.9375, abs=1e-12)


def test_dense_qfi_matches_closed_form(ghz_service):
    scenario = GhzScenario(N=2, p=0.7, mu=1.5)
    closed = ghz_service.ghz_conditional_qfi_closed(scenario)
    assert closed == pytest.approx(1.5**2 * 0.49 * 4 / 0.85, rel=1e-14)
    assert ghz_service.ghz_conditional_qfi_dense(scenario) == pytest.approx(closed, rel=1e-9)
    assert ghz_service.ghz_qfi_convention_ratio(scenario) == pytest.approx(1.0, rel=1e-9)


def test_convention_ratio_without_signal_is_nan(ghz_service):
    assert math.isnan(ghz_service.ghz_qfi_convention_ratio(GhzScenario(N=2, p=0.0)))


def test_collective_jz_spectrum(ghz_service):
    np.testing.assert_allclose(np.diag(ghz_service.collective_jz(2, 1.0).matrix).real, [1.0, 0.0, 0.0, -1.0])
    np.testing.assert_allclose(np.diag(ghz_service.collective_jz(1, 2.0).matrix).real, [1.0, -1.0])


def test_pure_pair_steers_bob_into_x_eigenstates(ghz_service):
    state = ghz_service.noisy_ghz(GhzScenario(N=1, p=1.0))
    asm = ghz_service.alice_pauli_assemblage(state, PauliSetting.X)
    plus, minus = asm.outcomes("x")
    assert (plus.label, minus.label) == ("+", "-")
    assert plus.probability == pytest.approx(0.5)
    np.testing.assert_allclose(plus.state, ket_state(1, 1), atol=1e-14)
    np.testing.assert_allclose(minus.state, ket_state(1, -1), atol=1e-14)


def test_two_setting_assemblage_is_no_signaling(ghz_service):
    asm = ghz_service.ghz_assemblage(ghz_service.noisy_ghz(GhzScenario(N=3, p=0.4)))
    assert asm.settings == ("x", "z")
    assert asm.dim == 8


def test_dense_guards(ghz_service):
    with pytest.raises(DenseSizeError):
        ghz_service.noisy_ghz(GhzScenario(N=14, p=0.5))
    with pytest.raises(DenseSizeError, match="closed-form-only"):
        ghz_service.ghz_energy_variance_dense(GhzScenario(N=12, p=0.5))


def test_geometric_witness_tracks_canonical_crossing(ghz_service):
    assert ghz_service.ghz_geometric_witness(GhzScenario(N=2, p=0.9), 0.01).violated
    assert not ghz_service.ghz_geometric_witness(GhzScenario(N=2, p=0.0), 0.01).violated
    with pytest.raises(SpeedLimitError):
        ghz_service.ghz_geometric_witness(GhzScenario(N=2, p=0.9), 0.0)


@pytest.mark.parametrize("N,p", [(1, 0.0), (2, 0.0), (2, 0.5), (3, 1.0), (4, 0.3)])
def test_noisy_ghz_spectrum(ghz_service, N, p):
    dim = 2 ** (N + 1)
    eigenvalues = np.linalg.eigvalsh(ghz_service.noisy_ghz(GhzScenario(N=N, p=p)).entries)
    expected = np.full(dim, (1.0 - p) / dim)
    expected[-1] += p
    np.testing.assert_allclose(eigenvalues, expected, atol=1e-12)
