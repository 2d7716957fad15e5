"""Dense GHZ simulation against the closed forms, plus QFI and Bures geometry."""

import math

import numpy as np

from application.services.checks.base_checks import BaseChecks, CheckFn, relative_error
from application.services.ghz_service import GhzService
from config.settings import Settings
from domain.entities.constants import Constants
from domain.entities.ghz import GhzScenario
from domain.entities.verification import CheckResult
from infrastructure.oracles.fidelity_oracle import FidelityQfiOracle
from infrastructure.oracles.random_ensembles import (
    random_density_matrix,
    random_hermitian,
    random_pure_state,
)

VARIANCE_TOL = 1e-10
QFI_BOUND_TOL = 1e-9
PURE_QFI_RTOL = 1e-10
CLOSED_QFI_RTOL = 1e-9
FINITE_DIFFERENCE_RTOL = 1e-6
BURES_TOL = 1e-10
FIDELITY_ONE_TOL = 1e-9
RESIDUAL_TOL = 1e-10
CRITICAL_N1_TOL = 1e-12
TIME_BOUND_N1 = 0.577350269190
VANISHING_TOL = 1e-9
CROSSING_MARGIN = 0.05
VISIBILITIES = (0.0, 0.25, 0.5, 0.75, 1.0)


class GhzChecks(BaseChecks):
    stream_offset = 3_000

    def __init__(
        self,
        app_settings: Settings,
        seed: int,
        service: GhzService,
        fidelity_oracle: FidelityQfiOracle,
    ):
        super().__init__(app_settings, seed)
        self.service = service
        self.fidelity_oracle = fidelity_oracle
        self.density = service.density
        self.constants = Constants(hbar=app_settings.units.hbar, mu=app_settings.units.mu)

    def checks(self) -> dict[str, CheckFn]:
        return {
            "energy_variance_closed_form": self.energy_variance_closed_form,
            "qfi_bound_at_zero_visibility": self.qfi_bound_at_zero_visibility,
            "pure_state_qfi_identity": self.pure_state_qfi_identity,
            "conditional_qfi_closed_form": self.conditional_qfi_closed_form,
            "qfi_finite_difference": self.qfi_finite_difference,
            "bures_properties": self.bures_properties,
            "time_bound_monotone": self.time_bound_monotone,
            "critical_visibility_residual": self.critical_visibility_residual,
            "geometric_witness_crossing": self.geometric_witness_crossing,
        }

    def _scenario(self, N: int, p: float) -> GhzScenario:
        return GhzScenario(N=N, p=p, mu=self.constants.mu, hbar=self.constants.hbar)

    def energy_variance_closed_form(self) -> CheckResult:
        """The z-setting variance is the exact form; the printed one stays below it."""
        worst, below = 0.0, True
        for N in range(1, 9):
            for p in VISIBILITIES:
                scenario = self._scenario(N, p)
                dense = self.service.ghz_energy_variance_dense(scenario)
                exact = self.service.ghz_energy_variance_exact(scenario)
                worst = max(worst, abs(dense - exact) / max(1.0, exact))
                below = below and (
                    self.service.ghz_energy_variance_bound(scenario) <= dense + VARIANCE_TOL
                )
        return self.result(
            "energy_variance_closed_form",
            worst,
            VARIANCE_TOL,
            below and worst <= VARIANCE_TOL,
        )

    def qfi_bound_at_zero_visibility(self) -> CheckResult:
        worst_excess = -math.inf
        for N in range(1, 7):
            scenario = self._scenario(N, 0.0)
            asm = self.service.ghz_assemblage(self.service.noisy_ghz(scenario))
            H = self.service.collective_jz(N, scenario.mu)
            qfi, _ = self.service.assemblage_service.conditional_qfi(asm, H, self.constants)
            var_h, _ = self.service.assemblage_service.conditional_variance(asm, H)
            worst_excess = max(worst_excess, qfi - 4.0 * var_h / self.constants.hbar**2)
        return self.result(
            "qfi_bound_at_zero_visibility",
            worst_excess,
            QFI_BOUND_TOL,
            worst_excess <= QFI_BOUND_TOL,
        )

    def pure_state_qfi_identity(self) -> CheckResult:
        worst = 0.0
        for index in range(self.settings.verification.qfi_states):
            rng = self.rng(index)
            dim = 2 + index % 3
            rho = random_pure_state(dim, rng)
            H = random_hermitian(dim, rng).matrix
            qfi = self.density.spectral_qfi(rho, H, self.constants.hbar)
            expected = 4.0 * self.density.variance(rho, H) / self.constants.hbar**2
            worst = max(worst, relative_error(qfi, expected))
        return self.result(
            "pure_state_qfi_identity", worst, PURE_QFI_RTOL, worst <= PURE_QFI_RTOL
        )

    def conditional_qfi_closed_form(self) -> CheckResult:
        """Dense x-setting QFI times hbar^2 reproduces mu^2 p^2 N^2 / (p + 2^(1-N)(1-p))."""
        worst = 0.0
        for N in range(1, 7):
            for p in VISIBILITIES:
                scenario = self._scenario(N, p)
                dense = self.service.ghz_conditional_qfi_dense(scenario) * scenario.hbar**2
                closed = self.service.ghz_conditional_qfi_closed(scenario)
                error = abs(dense - closed) if closed == 0.0 else relative_error(dense, closed)
                worst = max(worst, error)
        return self.result(
            "conditional_qfi_closed_form", worst, CLOSED_QFI_RTOL, worst <= CLOSED_QFI_RTOL
        )

    def qfi_finite_difference(self) -> CheckResult:
        worst = 0.0
        for index in range(self.settings.verification.qfi_states):
            rng = self.rng(10_000 + index)
            rho = random_density_matrix(4, rng)
            H = random_hermitian(4, rng)
            spectral = self.density.spectral_qfi(rho, H.matrix, self.constants.hbar)
            numeric = self.fidelity_oracle.qfi(rho, H, self.constants, richardson=True)
            worst = max(worst, relative_error(numeric, spectral))
        return self.result(
            "qfi_finite_difference",
            worst,
            FINITE_DIFFERENCE_RTOL,
            worst <= FINITE_DIFFERENCE_RTOL,
        )

    def bures_properties(self) -> CheckResult:
        """Non-negativity, symmetry, identity, unitary invariance, pure-state overlap."""
        worst, ordered = 0.0, True
        for index in range(self.settings.verification.qfi_states):
            rng = self.rng(20_000 + index)
            dim = 2 + index % 3
            rho = random_density_matrix(dim, rng, rank=1 + index % dim)
            sigma = random_density_matrix(dim, rng)
            forward = self.density.bures_distance(rho, sigma)
            backward = self.density.bures_distance(sigma, rho)
            ordered = ordered and 0.0 <= forward <= math.pi / 2
            worst = max(worst, abs(forward - backward))

            same = self.density.fidelity_root(rho, rho)
            worst = max(worst, self.density.bures_distance(rho, rho))
            ordered = ordered and abs(same - 1.0) <= FIDELITY_ONE_TOL

            unitary = self.density.propagator(random_hermitian(dim, rng).matrix, 1.0, 1.0)
            rotated = self.density.bures_distance(
                unitary @ rho @ unitary.conj().T, unitary @ sigma @ unitary.conj().T
            )
            worst = max(worst, abs(rotated - forward))

            psi = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
            phi = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
            psi /= np.linalg.norm(psi)
            phi /= np.linalg.norm(phi)
            overlap = min(abs(np.vdot(psi, phi)), 1.0)
            pure = self.density.bures_distance(
                np.outer(psi, psi.conj()), np.outer(phi, phi.conj())
            )
            worst = max(worst, abs(pure - math.acos(overlap)))
        return self.result(
            "bures_properties", worst, BURES_TOL, ordered and worst <= BURES_TOL
        )

    def time_bound_monotone(self) -> CheckResult:
        """Zero at zero visibility, strictly increasing in p, pinned at N = 1."""
        pinned = abs(self.service.ghz_time_bound(GhzScenario(N=1, p=0.5)) - TIME_BOUND_N1)
        vanishing, increasing = 0.0, True
        for N in range(1, 11):
            vanishing = max(vanishing, self.service.ghz_time_bound(self._scenario(N, 1e-12)))
            bounds = [
                self.service.ghz_time_bound(self._scenario(N, float(p)))
                for p in np.linspace(0.0, 0.999, 200)
            ]
            increasing = increasing and bool(np.all(np.diff(bounds) > 0.0))
        return self.result(
            "time_bound_monotone",
            pinned,
            CRITICAL_N1_TOL,
            increasing and pinned <= CRITICAL_N1_TOL and vanishing <= VANISHING_TOL,
            f"bound at p=1e-12 reaches {vanishing:.3e}",
        )

    def critical_visibility_residual(self) -> CheckResult:
        worst = abs(self.service.critical_visibility(1) - (math.sqrt(17.0) - 1.0) / 8.0)
        pinned = worst <= CRITICAL_N1_TOL
        for N in range(1, 11):
            p_c = self.service.critical_visibility(N)
            worst = max(worst, abs(self.service.critical_visibility_residual(N, p_c)))
        return self.result(
            "critical_visibility_residual",
            worst,
            RESIDUAL_TOL,
            pinned and worst <= RESIDUAL_TOL,
        )

    def geometric_witness_crossing(self) -> CheckResult:
        """Small-dt geometric witness flips at the exact-variance crossing."""
        N, dt = 2, 0.01
        crossing = self.service.canonical_critical_visibility(N)
        below = self.service.ghz_geometric_witness(
            self._scenario(N, crossing - CROSSING_MARGIN), dt
        )
        above = self.service.ghz_geometric_witness(
            self._scenario(N, crossing + CROSSING_MARGIN), dt
        )
        noise_only = [
            self.service.ghz_geometric_witness(self._scenario(N, 0.0), step)
            for step in (0.01, 0.1, 1.0)
        ]
        passed = (
            not below.violated
            and above.violated
            and not any(report.violated for report in noise_only)
        )
        return self.result(
            "geometric_witness_crossing",
            crossing,
            CROSSING_MARGIN,
            passed,
            f"gamma below={below.gamma:.6g} above={above.gamma:.6g}",
        )
