"""Gauss-Hermite quadrature over Alice's homodyne outcome."""

import logging
import math
from functools import lru_cache
from typing import Callable, Optional

import numpy as np
from scipy import integrate, stats

from domain.entities.gaussian import GaussianBipartiteState, HomodyneSetting
from domain.entities.oracle import MomentEstimate, MomentFunctional, QuadratureRule
from infrastructure.oracles.base_oracle import AffineConditioning, BaseMomentOracle

logger = logging.getLogger(__name__)

# outcome standard deviations covered by the split abs-mean integral
OUTCOME_WINDOW = 40.0


@lru_cache(maxsize=16)
def hermite_rule(order: int) -> QuadratureRule:
    """Shared read-only rule per order."""
    return QuadratureRule.hermite_e(order)


def gaussian_expectation(
    fn: Callable[[np.ndarray], np.ndarray], mean: float, std: float, order: int = 40
) -> float:
    """E[fn(a)] for a ~ N(mean, std^2) with a fixed-order rule."""
    rule = hermite_rule(order)
    return rule.expectation(fn(mean + std * rule.nodes))


class QuadratureMomentOracle(BaseMomentOracle):
    """Adaptive Gauss-Hermite oracle.

    The order doubles until successive estimates agree to ``rtol``. The
    absolute conditional mean has a kink in the outcome, so that one
    integral is split at the kink and done by adaptive quadrature.
    """

    def __init__(self, order: int = 40, max_order: int = 320, rtol: float = 1e-10):
        self.order = order
        self.max_order = max_order
        self.rtol = rtol

    def _adaptive(
        self, functional: MomentFunctional, conditioning: AffineConditioning
    ) -> tuple[float, int]:
        order = self.order
        previous = None
        while True:
            rule = hermite_rule(order)
            outcomes = conditioning.outcome_mean + conditioning.outcome_std * rule.nodes
            value = rule.expectation(self._values(functional, conditioning, outcomes))
            if previous is not None and abs(value - previous) <= self.rtol * abs(value):
                return value, order
            if order * 2 > self.max_order:
                logger.debug("Quadrature stopped at order %d without converging", order)
                return value, order
            previous = value
            order *= 2

    @staticmethod
    def _split_abs_mean(conditioning: AffineConditioning) -> Optional[float]:
        """Adaptive quadrature split at the kink, or None when the kink misses the bulk."""
        offset, slope = conditioning.mean_offset[1], conditioning.slope[1]
        center, width = conditioning.outcome_mean, conditioning.outcome_std
        kink = center - offset / slope
        lower, upper = center - OUTCOME_WINDOW * width, center + OUTCOME_WINDOW * width
        if not lower < kink < upper:
            return None
        law = stats.norm(loc=center, scale=width)

        def integrand(a: float) -> float:
            return abs(offset + slope * (a - center)) * law.pdf(a)

        breaks = sorted({kink, center - 5.0 * width, center, center + 5.0 * width})
        value, _ = integrate.quad(
            integrand, lower, upper, points=breaks, epsabs=0.0, epsrel=1e-12, limit=200
        )
        return value

    def estimate(
        self,
        state: GaussianBipartiteState,
        setting: HomodyneSetting,
        functional: MomentFunctional,
    ) -> MomentEstimate:
        functional = self._coerce(functional)
        conditioning = self._condition(state, setting)
        if functional is MomentFunctional.ABS_MEAN_P and conditioning.slope[1] != 0.0:
            split = self._split_abs_mean(conditioning)
            if split is not None:
                return MomentEstimate(functional=functional, value=split)
        value, order = self._adaptive(functional, conditioning)
        return MomentEstimate(functional=functional, value=value, evaluations=order)

    def outcome_normalization(
        self, pdf: Callable[[float], float], mean: float, std: float
    ) -> float:
        """Integral of an outcome density, by importance against N(mean, std^2)."""
        rule = hermite_rule(self.order)
        nodes = mean + std * rule.nodes
        density = np.array([pdf(a) for a in nodes])
        ratio = density * std * math.sqrt(2.0 * math.pi) * np.exp(rule.nodes**2 / 2.0)
        return rule.expectation(ratio)


def quad_conditional_moment(
    state: GaussianBipartiteState,
    setting: HomodyneSetting,
    functional: MomentFunctional,
    order: int = 40,
) -> float:
    return QuadratureMomentOracle(order=order).estimate(state, setting, functional).value
