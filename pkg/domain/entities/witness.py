"""Witness report entity."""

import math
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, model_validator

# a reported violation keeps gamma at least this far below one
VIOLATION_MARGIN = 1e-12


class WitnessCriterion(str, Enum):
    """Steering criteria evaluated by the library."""

    MANDELSTAM_TAMM = "mandelstam_tamm"
    QUANTUM_FISHER = "quantum_fisher"
    GEOMETRIC = "geometric"
    DISPLACEMENT = "displacement"


class WitnessReport(BaseModel):
    """Outcome of one steering witness.

    ``gamma`` is the ratio that the local hidden state bound keeps at or
    above one; a violation certifies steering.
    """

    model_config = ConfigDict(frozen=True)

    criterion: WitnessCriterion
    measured: float
    lhs_bound: float
    gamma: float
    violated: bool
    chosen_setting_min: Optional[str] = None
    chosen_setting_max: Optional[str] = None
    degenerate: bool = False

    @model_validator(mode="after")
    def _violation_consistency(self) -> "WitnessReport":
        if self.violated and (self.degenerate or not self.gamma < 1.0 - VIOLATION_MARGIN):
            raise ValueError(
                f"Inconsistent report: violated with gamma={self.gamma} "
                f"and degenerate={self.degenerate}"
            )
        if math.isnan(self.gamma):
            raise ValueError("gamma must not be NaN")
        return self
