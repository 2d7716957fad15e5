"""Noisy GHZ assemblages and their closed-form witnesses."""

import logging
import math
from typing import Optional

import numpy as np
from scipy.optimize import brentq

from application.services.assemblage_service import AssemblageService
from config.settings import Settings, settings as default_settings
from domain.entities.assemblage import AssemblageOutcome, DiscreteAssemblage
from domain.entities.constants import Constants, Observable
from domain.entities.ghz import DensityMatrix, GhzScenario, PauliSetting
from domain.entities.witness import WitnessReport
from domain.exceptions import DenseSizeError, SpeedLimitError

logger = logging.getLogger(__name__)

# Alice's projectors, outcome "+" first
_PAULI_EIGENVECTORS = {
    PauliSetting.Z: (("+", np.array([1.0, 0.0])), ("-", np.array([0.0, 1.0]))),
    PauliSetting.X: (
        ("+", np.array([1.0, 1.0]) / math.sqrt(2.0)),
        ("-", np.array([1.0, -1.0]) / math.sqrt(2.0)),
    ),
}


class GhzService:
    """Dense simulation and closed forms of the noisy GHZ protocol."""

    def __init__(
        self,
        app_settings: Optional[Settings] = None,
        assemblage_service: Optional[AssemblageService] = None,
    ):
        self.settings = app_settings or default_settings
        self.assemblage_service = assemblage_service or AssemblageService(
            tolerances=self.settings.tolerances
        )
        self.density = self.assemblage_service.density

    @staticmethod
    def constants(scenario: GhzScenario) -> Constants:
        return Constants(hbar=scenario.hbar, mu=scenario.mu)

    # ------------------------------------------------------------------
    # Dense states and assemblages
    # ------------------------------------------------------------------

    def noisy_ghz(self, scenario: GhzScenario) -> DensityMatrix:
        """p |GHZ><GHZ| + (1 - p)/2^(N+1) on Alice's qubit plus N of Bob's."""
        qubits = scenario.N + 1
        if qubits > self.settings.ghz.max_state_qubits:
            raise DenseSizeError(
                f"{qubits} qubits exceed the dense-state guard of "
                f"{self.settings.ghz.max_state_qubits}"
            )
        dim = 2**qubits
        ghz = np.zeros(dim, dtype=complex)
        ghz[0] = ghz[-1] = 1.0 / math.sqrt(2.0)
        rho = scenario.p * np.outer(ghz, ghz.conj()) + (1.0 - scenario.p) / dim * np.eye(
            dim
        )
        return DensityMatrix(entries=rho)

    def alice_pauli_assemblage(
        self, state: DensityMatrix, setting: PauliSetting
    ) -> DiscreteAssemblage:
        """Bob's conditional states after Alice measures her (first) qubit."""
        if state.n_qubits < 2:
            raise SpeedLimitError("Alice and Bob need at least one qubit each")
        bob_dim = state.dim // 2
        blocks = state.entries.reshape(2, bob_dim, 2, bob_dim)
        outcomes = []
        for label, vector in _PAULI_EIGENVECTORS[setting]:
            unnormalized = np.einsum("a,ajbk,b->jk", vector.conj(), blocks, vector)
            probability = float(np.real(np.trace(unnormalized)))
            if probability < self.settings.tolerances.outcome_pruning:
                continue
            conditional = unnormalized / probability
            outcomes.append(
                AssemblageOutcome(
                    label=label,
                    probability=probability,
                    state=(conditional + conditional.conj().T) / 2,
                )
            )
        return DiscreteAssemblage(
            dim=bob_dim, settings=(setting.value,), table={setting.value: tuple(outcomes)}
        )

    def ghz_assemblage(self, state: DensityMatrix) -> DiscreteAssemblage:
        """Both Pauli settings, x first."""
        by_x = self.alice_pauli_assemblage(state, PauliSetting.X)
        by_z = self.alice_pauli_assemblage(state, PauliSetting.Z)
        return DiscreteAssemblage(
            dim=by_x.dim,
            settings=(PauliSetting.X.value, PauliSetting.Z.value),
            table={**by_x.table, **by_z.table},
        )

    @staticmethod
    def collective_jz(N: int, mu: float) -> Observable:
        """J_z = (mu/2) sum_i sigma_z on N qubits."""
        indices = np.arange(2**N)
        ones = np.array([bin(index).count("1") for index in indices])
        return Observable(matrix=np.diag(mu / 2.0 * (N - 2 * ones)), units="energy")

    def spectral_qfi(self, rho: DensityMatrix, H: Observable, c: Constants) -> float:
        return self.density.spectral_qfi(rho.entries, H.matrix, c.hbar)

    def bures_distance(self, rho: DensityMatrix, sigma: DensityMatrix) -> float:
        return self.density.bures_distance(rho.entries, sigma.entries)

    # ------------------------------------------------------------------
    # Closed forms
    # ------------------------------------------------------------------

    @staticmethod
    def ghz_energy_variance_bound(scenario: GhzScenario) -> float:
        """mu^2 (1 - p) N / 4, a lower bound on the z-setting energy variance."""
        return scenario.mu**2 * (1.0 - scenario.p) * scenario.N / 4.0

    @staticmethod
    def ghz_energy_variance_exact(scenario: GhzScenario) -> float:
        """z-setting conditional variance of J_z: mu^2 N (1 - p)(1 + N p) / 4."""
        N, p = scenario.N, scenario.p
        return scenario.mu**2 * N * (1.0 - p) * (1.0 + N * p) / 4.0

    @staticmethod
    def ghz_conditional_qfi_closed(scenario: GhzScenario) -> float:
        """hbar^2 <v^2>_{B|A} = mu^2 p^2 N^2 / (p + 2 (1 - p) / 2^N)."""
        N, p = scenario.N, scenario.p
        return scenario.mu**2 * p**2 * N**2 / (p + 2.0 * (1.0 - p) / 2**N)

    @staticmethod
    def critical_visibility(N: int) -> float:
        """Visibility above which the conditional QFI beats the energy-variance bound."""
        if N < 1:
            raise SpeedLimitError(f"N must be at least 1, got {N}")
        two_n = 2.0**N
        return (two_n + math.sqrt(two_n * (two_n + 32.0 * N)) - 4.0) / (
            8.0 * two_n * N + 2.0 * two_n - 4.0
        )

    @staticmethod
    def critical_visibility_residual(N: int, p: float) -> float:
        """4 p^2 N - (1 - p)(p + 2^(1-N)(1 - p)); zero at the critical visibility."""
        return 4.0 * p**2 * N - (1.0 - p) * (p + 2.0 ** (1 - N) * (1.0 - p))

    @staticmethod
    def canonical_critical_visibility(N: int) -> float:
        """Crossing of F_{B|A} with 4 (Delta H)^2_{B|A} / hbar^2, exact variance."""
        if N < 1:
            raise SpeedLimitError(f"N must be at least 1, got {N}")

        def excess(p: float) -> float:
            return p**2 * N - (1.0 - p) * (1.0 + N * p) * (
                p + 2.0 ** (1 - N) * (1.0 - p)
            )

        return float(brentq(excess, 0.0, 1.0, xtol=1e-15))

    @staticmethod
    def ghz_time_bound(scenario: GhzScenario) -> float:
        """LHS lower bound on the evolution time; +inf at p = 1."""
        N, p = scenario.N, scenario.p
        if p >= 1.0:
            return math.inf
        if p <= 0.0:
            return 0.0
        denominator = (2.0 ** (1 - N) * (1.0 - p) + p) * (1.0 - p + N * (1.0 - p) * p)
        return scenario.hbar / scenario.mu * p * math.sqrt(N / denominator)

    # ------------------------------------------------------------------
    # Dense witnesses
    # ------------------------------------------------------------------

    def _guard_dense(self, scenario: GhzScenario) -> None:
        qubits = scenario.N + 1
        if qubits > self.settings.ghz.max_dense_qubits:
            raise DenseSizeError(
                f"{qubits} qubits exceed the dense-witness guard of "
                f"{self.settings.ghz.max_dense_qubits}; use the closed-form-only path"
            )

    def ghz_energy_variance_dense(self, scenario: GhzScenario) -> float:
        """z-setting conditional variance of J_z from the dense assemblage."""
        self._guard_dense(scenario)
        asm = self.alice_pauli_assemblage(self.noisy_ghz(scenario), PauliSetting.Z)
        value, _ = self.assemblage_service.conditional_variance(
            asm, self.collective_jz(scenario.N, scenario.mu)
        )
        return value

    def ghz_conditional_qfi_dense(self, scenario: GhzScenario) -> float:
        """x-setting conditional QFI from the spectral formula."""
        self._guard_dense(scenario)
        asm = self.alice_pauli_assemblage(self.noisy_ghz(scenario), PauliSetting.X)
        value, _ = self.assemblage_service.conditional_qfi(
            asm, self.collective_jz(scenario.N, scenario.mu), self.constants(scenario)
        )
        return value

    def ghz_qfi_convention_ratio(self, scenario: GhzScenario) -> float:
        """Closed-form value over the dense conditional QFI (nan when both vanish)."""
        dense = self.ghz_conditional_qfi_dense(scenario)
        closed = self.ghz_conditional_qfi_closed(scenario)
        if dense == 0.0:
            return math.nan if closed == 0.0 else math.inf
        return closed / dense

    def ghz_geometric_witness(self, scenario: GhzScenario, dt: float) -> WitnessReport:
        """Bures-angle witness on the two-setting GHZ assemblage evolved under J_z."""
        self._guard_dense(scenario)
        if dt <= 0.0:
            raise SpeedLimitError(f"Evolution time must be positive, got {dt}")
        c = self.constants(scenario)
        H = self.collective_jz(scenario.N, scenario.mu)
        asm = self.ghz_assemblage(self.noisy_ghz(scenario))
        evolved = self.assemblage_service.evolve_assemblage(asm, H, dt, c)
        report = self.assemblage_service.geometric_time_bound(asm, evolved, H, dt, c)
        logger.debug(
            "GHZ N=%d p=%.6g dt=%.6g: dense bound %.12g, closed-form time bound %.12g",
            scenario.N, scenario.p, dt, report.lhs_bound, self.ghz_time_bound(scenario),
        )
        return report
