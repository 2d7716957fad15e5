"""Moment oracle port interface."""

from abc import ABC, abstractmethod

from domain.entities.gaussian import GaussianBipartiteState, HomodyneSetting
from domain.entities.oracle import MomentEstimate, MomentFunctional


class MomentOraclePort(ABC):
    """Port interface for brute-force conditional moment evaluation."""

    @abstractmethod
    def estimate(
        self,
        state: GaussianBipartiteState,
        setting: HomodyneSetting,
        functional: MomentFunctional,
    ) -> MomentEstimate:
        """
        Average a functional of Bob's conditional state over Alice's outcome.

        Args:
            state: Bipartite Gaussian state
            setting: Alice's ideal homodyne setting
            functional: Moment of Bob's conditional state to average

        Returns:
            Estimate with its standard error (zero for deterministic rules)
        """
        raise NotImplementedError
