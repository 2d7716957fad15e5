"""Seeded Monte Carlo over Alice's homodyne outcome."""

import math

import numpy as np

from domain.entities.gaussian import GaussianBipartiteState, HomodyneSetting
from domain.entities.oracle import McConfig, MomentEstimate, MomentFunctional
from infrastructure.oracles.base_oracle import BaseMomentOracle


def stream_generator(seed: int, index: int = 0) -> np.random.Generator:
    """Counter-based generator for grid point ``index``."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, index])))


class MonteCarloMomentOracle(BaseMomentOracle):
    """Sample-average oracle; one independent stream per ``stream`` index."""

    def __init__(self, config: McConfig, stream: int = 0):
        self.config = config
        self.stream = stream

    def estimate(
        self,
        state: GaussianBipartiteState,
        setting: HomodyneSetting,
        functional: MomentFunctional,
    ) -> MomentEstimate:
        functional = self._coerce(functional)
        conditioning = self._condition(state, setting)
        rng = stream_generator(self.config.seed, self.stream)
        outcomes = conditioning.outcome_mean + conditioning.outcome_std * rng.standard_normal(
            self.config.samples
        )
        values = self._values(functional, conditioning, outcomes)
        if np.ptp(values) == 0.0:
            return MomentEstimate(
                functional=functional,
                value=float(values[0]),
                evaluations=self.config.samples,
            )
        return MomentEstimate(
            functional=functional,
            value=float(np.mean(values)),
            stderr=float(np.std(values, ddof=1) / math.sqrt(values.size)),
            evaluations=self.config.samples,
        )


def mc_conditional_moment(
    state: GaussianBipartiteState,
    setting: HomodyneSetting,
    functional: MomentFunctional,
    cfg: McConfig,
    stream: int = 0,
) -> tuple[float, float]:
    estimate = MonteCarloMomentOracle(cfg, stream).estimate(state, setting, functional)
    return estimate.value, estimate.stderr
