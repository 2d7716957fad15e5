"""Steering witnesses on finite assemblages."""

import logging
import math
from typing import Callable, Mapping, Optional, Sequence

import numpy as np

from application.services.density_matrix_service import DensityMatrixService
from config.settings import ToleranceSettings
from domain.entities.assemblage import AssemblageOutcome, DiscreteAssemblage, LhsModel
from domain.entities.constants import Constants, Observable
from domain.entities.witness import WitnessCriterion, WitnessReport
from domain.exceptions import (
    DimensionMismatchError,
    EmptyAssemblageError,
    InvalidModelError,
    MismatchedAssemblageError,
    SpeedLimitError,
)

logger = logging.getLogger(__name__)

OutcomeFunctional = Callable[[AssemblageOutcome], float]


class AssemblageService:
    """Conditional moments and speed-limit witnesses for discrete assemblages.

    Every optimized quantity takes an optional ``setting`` that evaluates a
    single declared setting instead of optimizing over all of them.
    """

    def __init__(
        self,
        density: Optional[DensityMatrixService] = None,
        tolerances: Optional[ToleranceSettings] = None,
    ):
        self.tolerances = tolerances or ToleranceSettings()
        self.density = density or DensityMatrixService(self.tolerances)

    # ------------------------------------------------------------------
    # Bookkeeping
    # ------------------------------------------------------------------

    @staticmethod
    def _check(asm: DiscreteAssemblage, *operators: Observable) -> None:
        if asm.is_empty:
            raise EmptyAssemblageError("Assemblage has no settings")
        for operator in operators:
            if operator.dim != asm.dim:
                raise DimensionMismatchError(
                    f"Operator of dimension {operator.dim} on assemblage of "
                    f"dimension {asm.dim}"
                )

    @staticmethod
    def _settings(asm: DiscreteAssemblage, setting: Optional[str]) -> tuple[str, ...]:
        if setting is None:
            return asm.settings
        if setting not in asm.table:
            raise SpeedLimitError(f"Unknown setting '{setting}'")
        return (setting,)

    def _optimize(
        self,
        asm: DiscreteAssemblage,
        functional: OutcomeFunctional,
        maximize: bool,
        setting: Optional[str],
    ) -> tuple[float, str]:
        """Outcome-weighted average optimized over settings, ties to the first."""
        best_value: Optional[float] = None
        best_setting = ""
        for label in self._settings(asm, setting):
            value = 0.0
            for outcome in asm.outcomes(label):
                value += outcome.probability * functional(outcome)
            if (
                best_value is None
                or (maximize and value > best_value)
                or (not maximize and value < best_value)
            ):
                best_value, best_setting = value, label
        return float(best_value), best_setting

    # ------------------------------------------------------------------
    # Conditional moments
    # ------------------------------------------------------------------

    def expectation(self, rho: np.ndarray, M: Observable) -> float:
        return self.density.expectation(rho, M.matrix)

    def variance(self, rho: np.ndarray, M: Observable) -> float:
        return self.density.variance(rho, M.matrix)

    def conditional_variance(
        self, asm: DiscreteAssemblage, M: Observable, setting: Optional[str] = None
    ) -> tuple[float, str]:
        """(Delta M)^2_{B|A}: min over settings of the outcome-averaged variance."""
        self._check(asm, M)
        return self._optimize(
            asm,
            lambda outcome: self.density.variance(outcome.state, M.matrix),
            maximize=False,
            setting=setting,
        )

    def conditional_mean_rate(
        self,
        asm: DiscreteAssemblage,
        M: Observable,
        H: Observable,
        c: Constants,
        setting: Optional[str] = None,
    ) -> tuple[float, str]:
        """Max over settings of sum_a p(a|X) |<(i/hbar)[H, M]>_a| at t = 0."""
        self._check(asm, M, H)
        return self._optimize(
            asm,
            lambda outcome: abs(
                self.density.commutator_rate(outcome.state, H.matrix, M.matrix, c.hbar)
            ),
            maximize=True,
            setting=setting,
        )

    def conditional_qfi(
        self,
        asm: DiscreteAssemblage,
        H: Observable,
        c: Constants,
        setting: Optional[str] = None,
    ) -> tuple[float, str]:
        """Max over settings of the outcome-averaged quantum Fisher information."""
        self._check(asm, H)
        return self._optimize(
            asm,
            lambda outcome: self.density.spectral_qfi(outcome.state, H.matrix, c.hbar),
            maximize=True,
            setting=setting,
        )

    def reduced_state(
        self, asm: DiscreteAssemblage, setting: Optional[str] = None
    ) -> np.ndarray:
        """Bob's unconditioned state sum_a p(a|X) rho_{a|X}."""
        self._check(asm)
        label = self._settings(asm, setting)[0]
        return sum(outcome.weighted_state for outcome in asm.outcomes(label))

    # ------------------------------------------------------------------
    # Dynamics
    # ------------------------------------------------------------------

    def evolve_assemblage(
        self, asm: DiscreteAssemblage, H: Observable, dt: float, c: Constants
    ) -> DiscreteAssemblage:
        """Rotate every conditional state by exp(-i H dt / hbar)."""
        self._check(asm, H)
        unitary = self.density.propagator(H.matrix, dt, c.hbar)
        table = {}
        for label in asm.settings:
            evolved = []
            for outcome in asm.outcomes(label):
                state = unitary @ outcome.state @ unitary.conj().T
                evolved.append(
                    AssemblageOutcome(
                        label=outcome.label,
                        probability=outcome.probability,
                        state=(state + state.conj().T) / 2,
                    )
                )
            table[label] = tuple(evolved)
        return DiscreteAssemblage(dim=asm.dim, settings=asm.settings, table=table)

    def _check_pair(self, asm_t0: DiscreteAssemblage, asm_t: DiscreteAssemblage) -> None:
        if asm_t0.settings != asm_t.settings or asm_t0.dim != asm_t.dim:
            raise MismatchedAssemblageError("Assemblages declare different settings")
        for label in asm_t0.settings:
            before, after = asm_t0.outcomes(label), asm_t.outcomes(label)
            if [o.label for o in before] != [o.label for o in after]:
                raise MismatchedAssemblageError(
                    f"Setting '{label}' has different outcome labels"
                )
            for first, second in zip(before, after):
                if abs(first.probability - second.probability) > self.tolerances.trace:
                    raise MismatchedAssemblageError(
                        f"Outcome '{first.label}' of '{label}' changed probability"
                    )

    def conditional_mean_shift(
        self, asm_t0: DiscreteAssemblage, asm_t1: DiscreteAssemblage, M: Observable
    ) -> tuple[float, str]:
        """delta<M>_{B|A}: max over settings of sum_a p(a|X) |Delta <M>_a|."""
        self._check(asm_t0, M)
        self._check_pair(asm_t0, asm_t1)
        best_value, best_setting = -1.0, ""
        for label in asm_t0.settings:
            value = 0.0
            for before, after in zip(asm_t0.outcomes(label), asm_t1.outcomes(label)):
                shift = self.expectation(after.state, M) - self.expectation(
                    before.state, M
                )
                value += before.probability * abs(shift)
            if value > best_value:
                best_value, best_setting = value, label
        return best_value, best_setting

    def reduced_mean_shift(
        self, asm_t0: DiscreteAssemblage, asm_t1: DiscreteAssemblage, M: Observable
    ) -> float:
        """delta<M>_B on Bob's unconditioned states."""
        self._check(asm_t0, M)
        self._check_pair(asm_t0, asm_t1)
        return abs(
            self.expectation(self.reduced_state(asm_t1), M)
            - self.expectation(self.reduced_state(asm_t0), M)
        )

    # ------------------------------------------------------------------
    # Witnesses
    # ------------------------------------------------------------------

    def mt_witness(
        self, asm: DiscreteAssemblage, M: Observable, H: Observable, c: Constants
    ) -> WitnessReport:
        """Conditional Mandelstam-Tamm witness; violation certifies steering."""
        var_m, setting_min = self.conditional_variance(asm, M)
        rate, setting_max = self.conditional_mean_rate(asm, M, H, c)
        var_h, setting_h = self.conditional_variance(asm, H)
        bound = (
            c.hbar / (2.0 * math.sqrt(var_h))
            if var_h > self.tolerances.degenerate
            else math.inf
        )
        if rate <= self.tolerances.degenerate or var_h <= self.tolerances.degenerate:
            logger.debug(
                "Degenerate Mandelstam-Tamm witness: rate=%.3e var_h=%.3e", rate, var_h
            )
            return WitnessReport(
                criterion=WitnessCriterion.MANDELSTAM_TAMM,
                measured=(
                    math.inf
                    if rate <= self.tolerances.degenerate
                    else math.sqrt(var_m) / rate
                ),
                lhs_bound=bound,
                gamma=math.inf,
                violated=False,
                chosen_setting_min=setting_min,
                chosen_setting_max=setting_max,
                degenerate=True,
            )
        time_scale = math.sqrt(var_m) / rate
        gamma = time_scale / bound
        logger.debug(
            "MT witness: var_m=%.6g (%s) rate=%.6g (%s) var_h=%.6g (%s) gamma=%.12g",
            var_m, setting_min, rate, setting_max, var_h, setting_h, gamma,
        )
        return WitnessReport(
            criterion=WitnessCriterion.MANDELSTAM_TAMM,
            measured=time_scale,
            lhs_bound=bound,
            gamma=gamma,
            violated=gamma < 1.0 - self.tolerances.witness,
            chosen_setting_min=setting_min,
            chosen_setting_max=setting_max,
        )

    def qfi_witness(
        self, asm: DiscreteAssemblage, H: Observable, c: Constants
    ) -> WitnessReport:
        """Conditional QFI against 4(Delta H)^2_{B|A}/hbar^2."""
        qfi, setting_max = self.conditional_qfi(asm, H, c)
        var_h, setting_min = self.conditional_variance(asm, H)
        bound = 4.0 * var_h / c.hbar**2
        if qfi <= self.tolerances.degenerate:
            return WitnessReport(
                criterion=WitnessCriterion.QUANTUM_FISHER,
                measured=qfi,
                lhs_bound=bound,
                gamma=math.inf,
                violated=False,
                chosen_setting_min=setting_min,
                chosen_setting_max=setting_max,
                degenerate=True,
            )
        gamma = bound / qfi
        return WitnessReport(
            criterion=WitnessCriterion.QUANTUM_FISHER,
            measured=qfi,
            lhs_bound=bound,
            gamma=gamma,
            violated=gamma < 1.0 - self.tolerances.witness,
            chosen_setting_min=setting_min,
            chosen_setting_max=setting_max,
        )

    def displacement_time_bound(
        self, d_mean: float, var_m_cond: float, var_h_cond: float, c: Constants
    ) -> float:
        """Smallest LHS-compatible time for the mean of M to move by ``d_mean``."""
        if var_m_cond <= 0.0 or var_h_cond <= 0.0:
            raise SpeedLimitError(
                f"Conditional variances must be positive, got {var_m_cond} and {var_h_cond}"
            )
        if d_mean < 0.0:
            raise SpeedLimitError(f"Mean displacement must be non-negative, got {d_mean}")
        return c.hbar * d_mean / (2.0 * math.sqrt(var_h_cond) * math.sqrt(var_m_cond))

    def geometric_time_bound(
        self,
        asm_t0: DiscreteAssemblage,
        asm_t: DiscreteAssemblage,
        H: Observable,
        dt: float,
        c: Constants,
        setting: Optional[str] = None,
    ) -> WitnessReport:
        """Bures-angle speed limit on the conditional states.

        ``<D^2>_{B|A}`` is maximized over settings (or taken at ``setting``),
        the energy variance is minimized over settings of ``asm_t0``.
        """
        if dt <= 0.0:
            raise SpeedLimitError(f"Evolution time must be positive, got {dt}")
        self._check(asm_t0, H)
        self._check_pair(asm_t0, asm_t)

        best_d2, best_spread, setting_max = -1.0, 0.0, ""
        for label in self._settings(asm_t0, setting):
            d2, spread = 0.0, 0.0
            for before, after in zip(asm_t0.outcomes(label), asm_t.outcomes(label)):
                distance = self.density.bures_distance(after.state, before.state)
                d2 += before.probability * distance**2
                # arccos amplifies fidelity round-off by 1/sin(D)
                spread += before.probability * (
                    distance / math.sin(distance) if distance > 0.0 else 1.0
                )
            if d2 > best_d2:
                best_d2, best_spread, setting_max = d2, spread, label
        var_h, setting_min = self.conditional_variance(asm_t0, H)

        if best_d2 <= self.tolerances.degenerate:
            bound, gamma, violated = 0.0, math.inf, False
        elif var_h <= self.tolerances.degenerate:
            bound, gamma, violated = math.inf, 0.0, True
        else:
            bound = c.hbar * math.sqrt(best_d2 / var_h)
            gamma = dt / bound
            # relative error of the bound is roundoff * spread / <D^2>
            margin = (
                self.tolerances.witness
                + self.tolerances.witness_relative
                + self.tolerances.fidelity_roundoff * best_spread / best_d2
            )
            violated = gamma < 1.0 - margin
        logger.debug(
            "Geometric witness: <D^2>=%.6g (%s) var_h=%.6g (%s) bound=%.12g dt=%.6g",
            best_d2, setting_max, var_h, setting_min, bound, dt,
        )
        return WitnessReport(
            criterion=WitnessCriterion.GEOMETRIC,
            measured=dt,
            lhs_bound=bound,
            gamma=gamma,
            violated=violated,
            chosen_setting_min=setting_min,
            chosen_setting_max=setting_max,
        )

    # ------------------------------------------------------------------
    # Local hidden state models
    # ------------------------------------------------------------------

    def assemblage_from_lhs(
        self,
        model: LhsModel,
        settings: Optional[Sequence[str]] = None,
        outcomes: Optional[Mapping[str, Sequence[str]]] = None,
    ) -> DiscreteAssemblage:
        """Assemblage sum_lambda p(lambda) p(a|X,lambda) sigma_lambda, normalized."""
        labels = tuple(settings) if settings is not None else model.settings
        weights = model.weights
        states = np.stack([item.state for item in model.hidden])
        table = {}
        for label in labels:
            if label not in model.response:
                raise InvalidModelError(f"Model has no response for setting '{label}'")
            response = model.response[label]
            names = (
                list(outcomes[label])
                if outcomes is not None and label in outcomes
                else [str(index) for index in range(response.shape[1])]
            )
            if len(names) != response.shape[1]:
                raise InvalidModelError(
                    f"Setting '{label}' has {response.shape[1]} outcomes, "
                    f"got {len(names)} labels"
                )
            rows = []
            for column, name in enumerate(names):
                joint = weights * response[:, column]
                probability = float(np.sum(joint))
                if probability < self.tolerances.outcome_pruning:
                    continue
                state = np.einsum("l,lij->ij", joint, states) / probability
                rows.append(
                    AssemblageOutcome(
                        label=name,
                        probability=probability,
                        state=(state + state.conj().T) / 2,
                    )
                )
            table[label] = tuple(rows)
        return DiscreteAssemblage(dim=model.dim, settings=labels, table=table)
