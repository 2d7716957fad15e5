"""Soundness of the assemblage witnesses on local hidden state models."""

import math

import numpy as np

from application.services.assemblage_service import AssemblageService
from application.services.checks.base_checks import BaseChecks, CheckFn
from config.settings import Settings
from domain.entities.assemblage import AssemblageOutcome, DiscreteAssemblage
from domain.entities.constants import Constants
from domain.entities.verification import CheckResult
from infrastructure.oracles.random_ensembles import (
    random_hermitian,
    random_lhs_model,
    random_pure_state,
)

SOUNDNESS_TOL = 1e-9
STEP_TOL = 1e-10
SETTING_LABELS = ("a", "b", "c")
# evolution times for the geometric witness, drawn log-uniformly
GEOMETRIC_DT_RANGE = (1e-7, math.pi)


class AssemblageChecks(BaseChecks):
    stream_offset = 1_000

    def __init__(self, app_settings: Settings, seed: int, service: AssemblageService):
        super().__init__(app_settings, seed)
        self.service = service
        self.constants = Constants(hbar=app_settings.units.hbar)

    def checks(self) -> dict[str, CheckFn]:
        return {
            "lhs_soundness_mt": self.lhs_soundness_mt,
            "lhs_soundness_qfi": self.lhs_soundness_qfi,
            "lhs_soundness_geometric": self.lhs_soundness_geometric,
            "variance_concavity": self.variance_concavity,
            "mean_shift_triangle": self.mean_shift_triangle,
            "setting_selection_stability": self.setting_selection_stability,
            "single_state_mandelstam_tamm": self.single_state_mandelstam_tamm,
        }

    def _lhs_case(self, index: int):
        """Random model with dims 2-4, 2-3 settings and 2-3 outcomes."""
        rng = self.rng(index)
        dim = 2 + index % 3
        settings = SETTING_LABELS[: 2 + index % 2]
        model = random_lhs_model(
            dim,
            rng,
            n_hidden=int(rng.integers(1, 5)),
            settings=settings,
            n_outcomes=2 + (index // 3) % 2,
        )
        asm = self.service.assemblage_from_lhs(model)
        M = random_hermitian(dim, rng)
        H = random_hermitian(dim, rng)
        return rng, model, asm, M, H

    def lhs_soundness_mt(self) -> CheckResult:
        worst, violations = math.inf, 0
        for index in range(self.settings.verification.lhs_models):
            _, _, asm, M, H = self._lhs_case(index)
            report = self.service.mt_witness(asm, M, H, self.constants)
            violations += report.violated
            if not report.degenerate:
                worst = min(worst, report.gamma)
        return self.result(
            "lhs_soundness_mt",
            worst,
            SOUNDNESS_TOL,
            violations == 0 and worst >= 1.0 - SOUNDNESS_TOL,
            f"{violations} violations",
        )

    def lhs_soundness_qfi(self) -> CheckResult:
        worst_excess = -math.inf
        for index in range(self.settings.verification.lhs_models):
            _, _, asm, _, H = self._lhs_case(index)
            qfi, _ = self.service.conditional_qfi(asm, H, self.constants)
            var_h, _ = self.service.conditional_variance(asm, H)
            worst_excess = max(worst_excess, qfi - 4.0 * var_h / self.constants.hbar**2)
        return self.result(
            "lhs_soundness_qfi", worst_excess, SOUNDNESS_TOL, worst_excess <= SOUNDNESS_TOL
        )

    def lhs_soundness_geometric(self) -> CheckResult:
        worst_ratio, violations = 0.0, 0
        for index in range(self.settings.verification.lhs_models):
            rng, _, asm, _, H = self._lhs_case(index)
            dt = float(np.exp(rng.uniform(*np.log(GEOMETRIC_DT_RANGE))))
            evolved = self.service.evolve_assemblage(asm, H, dt, self.constants)
            report = self.service.geometric_time_bound(asm, evolved, H, dt, self.constants)
            violations += report.violated
            worst_ratio = max(worst_ratio, report.lhs_bound / dt)
        return self.result(
            "lhs_soundness_geometric",
            worst_ratio,
            SOUNDNESS_TOL,
            violations == 0,
            f"{violations} violations",
        )

    def variance_concavity(self) -> CheckResult:
        worst_gap = math.inf
        for index in range(self.settings.verification.lhs_models):
            _, model, asm, M, _ = self._lhs_case(index)
            conditional, _ = self.service.conditional_variance(asm, M)
            averaged = sum(
                item.weight * self.service.variance(item.state, M) for item in model.hidden
            )
            worst_gap = min(worst_gap, conditional - averaged)
        return self.result(
            "variance_concavity", worst_gap, STEP_TOL, worst_gap >= -STEP_TOL
        )

    def mean_shift_triangle(self) -> CheckResult:
        worst_gap = math.inf
        for index in range(self.settings.verification.lhs_models):
            rng, _, asm, M, H = self._lhs_case(index)
            later = self.service.evolve_assemblage(
                asm, H, float(rng.uniform(0.1, 3.0)), self.constants
            )
            conditional, _ = self.service.conditional_mean_shift(asm, later, M)
            reduced = self.service.reduced_mean_shift(asm, later, M)
            worst_gap = min(worst_gap, conditional - reduced)
        return self.result(
            "mean_shift_triangle", worst_gap, STEP_TOL, worst_gap >= -STEP_TOL
        )

    def setting_selection_stability(self) -> CheckResult:
        worst = 0.0
        for index in range(self.settings.verification.lhs_models):
            _, _, asm, M, H = self._lhs_case(index)
            if len(asm.settings) < 2:
                continue
            duplicated = DiscreteAssemblage(
                dim=asm.dim,
                settings=asm.settings + ("duplicate",),
                table={**asm.table, "duplicate": asm.table[asm.settings[-1]]},
            )
            for optimize in (
                lambda a: self.service.conditional_variance(a, M),
                lambda a: self.service.conditional_mean_rate(a, M, H, self.constants),
            ):
                value, chosen = optimize(asm)
                others = [label for label in asm.settings if label != chosen]
                kept = [label for label in asm.settings if label != others[0]]
                reduced, _ = optimize(asm.restricted_to(kept))
                repeated, _ = optimize(duplicated)
                worst = max(worst, abs(reduced - value), abs(repeated - value))
        return self.result("setting_selection_stability", worst, 0.0, worst == 0.0)

    def single_state_mandelstam_tamm(self) -> CheckResult:
        worst = math.inf
        for index in range(self.settings.verification.qfi_states):
            rng = self.rng(50_000 + index)
            state = random_pure_state(2, rng)
            asm = single_outcome_assemblage(state)
            report = self.service.mt_witness(
                asm, random_hermitian(2, rng), random_hermitian(2, rng), self.constants
            )
            if not report.degenerate:
                worst = min(worst, report.gamma)
        return self.result(
            "single_state_mandelstam_tamm",
            worst,
            SOUNDNESS_TOL,
            worst >= 1.0 - SOUNDNESS_TOL,
        )


def single_outcome_assemblage(state: np.ndarray) -> DiscreteAssemblage:
    """One setting, one outcome: the unconditioned state."""
    return DiscreteAssemblage(
        dim=state.shape[0],
        settings=("only",),
        table={"only": (AssemblageOutcome(label="0", probability=1.0, state=state),)},
    )
