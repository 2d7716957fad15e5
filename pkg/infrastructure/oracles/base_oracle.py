"""Base moment oracle with an independent conditioning step."""

import math
from dataclasses import dataclass

import numpy as np

from application.ports.driven.oracles.moment_oracle_port import MomentOraclePort
from domain.entities.gaussian import GaussianBipartiteState, HomodyneSetting
from domain.entities.oracle import MomentFunctional
from domain.exceptions import SpeedLimitError, UnsupportedFunctionalError


@dataclass(frozen=True)
class AffineConditioning:
    """Bob's conditional moments as an affine map of Alice's outcome a.

    mean_B(a) = mean_offset + slope * (a - outcome_mean); cov is a-independent.
    """

    outcome_mean: float
    outcome_std: float
    mean_offset: np.ndarray
    slope: np.ndarray
    cov: np.ndarray

    def means(self, outcomes: np.ndarray) -> np.ndarray:
        """Conditional means, one row per outcome."""
        shifted = np.asarray(outcomes, dtype=float) - self.outcome_mean
        return self.mean_offset[None, :] + shifted[:, None] * self.slope[None, :]


class BaseMomentOracle(MomentOraclePort):
    """Common conditioning and functional evaluation."""

    def _condition(
        self, state: GaussianBipartiteState, setting: HomodyneSetting
    ) -> AffineConditioning:
        """
        Condition with the Moore-Penrose inverse of the projected block.

        Args:
            state: Bipartite Gaussian state
            setting: Alice's ideal homodyne setting

        Returns:
            Affine description of Bob's conditional states
        """
        if not setting.ideal:
            raise SpeedLimitError("Oracles only evaluate ideal homodyne settings")
        projector = np.outer(setting.direction, setting.direction)
        gain = state.sigma_ab.T @ np.linalg.pinv(projector @ state.sigma_a @ projector)
        index = setting.quadrature.index
        variance = float(state.sigma_a[index, index])
        return AffineConditioning(
            outcome_mean=float(state.mean_a[index]),
            outcome_std=math.sqrt(variance),
            mean_offset=np.array(state.mean_b, dtype=float),
            slope=gain @ setting.direction,
            cov=state.sigma_b - gain @ state.sigma_ab,
        )

    @staticmethod
    def _values(
        functional: MomentFunctional, conditioning: AffineConditioning, outcomes: np.ndarray
    ) -> np.ndarray:
        """Functional of the conditional state at each outcome."""
        outcomes = np.asarray(outcomes, dtype=float)
        var_x, var_p = conditioning.cov[0, 0], conditioning.cov[1, 1]
        if functional is MomentFunctional.VAR_X:
            return np.full(outcomes.shape, var_x)
        if functional is MomentFunctional.VAR_P:
            return np.full(outcomes.shape, var_p)
        mean_p = conditioning.means(outcomes)[:, 1]
        if functional is MomentFunctional.FOURTH_P:
            return 4.0 * mean_p**2 * var_p + 2.0 * var_p**2
        if functional is MomentFunctional.ABS_MEAN_P:
            return np.abs(mean_p)
        raise UnsupportedFunctionalError(f"Unsupported functional: {functional}")

    @staticmethod
    def _coerce(functional) -> MomentFunctional:
        try:
            return MomentFunctional(functional)
        except ValueError as exc:
            raise UnsupportedFunctionalError(
                f"Unsupported functional: {functional}. "
                f"Supported: {', '.join(f.value for f in MomentFunctional)}"
            ) from exc
