"""Definitional conditional statistics of discrete assemblages."""

import numpy as np

from domain.entities.assemblage import DiscreteAssemblage
from domain.entities.constants import Constants, Observable


def exhaustive_conditional_variance(asm: DiscreteAssemblage, M: Observable) -> float:
    """min_X sum_a p(a|X) (Tr[rho M^2] - Tr[rho M]^2), no shortcuts."""
    values = []
    for setting in asm.settings:
        total = 0.0
        for outcome in asm.outcomes(setting):
            mean = np.real(np.trace(outcome.state @ M.matrix))
            second = np.real(np.trace(outcome.state @ M.matrix @ M.matrix))
            total += outcome.probability * (second - mean**2)
        values.append(total)
    return float(min(values))


def exhaustive_conditional_rate(
    asm: DiscreteAssemblage, M: Observable, H: Observable, c: Constants
) -> float:
    """max_X sum_a p(a|X) |Tr[rho (i/hbar)(HM - MH)]|."""
    commutator = H.matrix @ M.matrix - M.matrix @ H.matrix
    values = []
    for setting in asm.settings:
        total = 0.0
        for outcome in asm.outcomes(setting):
            rate = np.real(np.trace(outcome.state @ commutator) * 1j / c.hbar)
            total += outcome.probability * abs(rate)
        values.append(total)
    return float(max(values))
