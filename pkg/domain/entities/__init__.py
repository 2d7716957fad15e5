"""Domain entities."""

from domain.entities.assemblage import (
    AssemblageOutcome,
    DiscreteAssemblage,
    HiddenState,
    LhsModel,
)
from domain.entities.constants import Constants, Observable
from domain.entities.gaussian import (
    GaussianBipartiteState,
    HomodyneSetting,
    Quadrature,
    SingleModeGaussian,
    TmssParams,
)
from domain.entities.ghz import DensityMatrix, GhzScenario, PauliSetting
from domain.entities.oracle import (
    McConfig,
    MomentEstimate,
    MomentFunctional,
    OracleKind,
    QuadratureRule,
)
from domain.entities.sweep import (
    DisplacementRow,
    FreeParticleRow,
    GhzRow,
    ParameterRange,
    Scenario,
    SweepConfig,
)
from domain.entities.verification import CheckResult, VerificationReport
from domain.entities.witness import WitnessCriterion, WitnessReport

__all__ = [
    # Units and operators
    "Constants",
    "Observable",
    # Assemblages
    "AssemblageOutcome",
    "DiscreteAssemblage",
    "HiddenState",
    "LhsModel",
    "WitnessCriterion",
    "WitnessReport",
    # Gaussian
    "GaussianBipartiteState",
    "HomodyneSetting",
    "Quadrature",
    "SingleModeGaussian",
    "TmssParams",
    # GHZ
    "DensityMatrix",
    "GhzScenario",
    "PauliSetting",
    # Oracles
    "McConfig",
    "MomentEstimate",
    "MomentFunctional",
    "OracleKind",
    "QuadratureRule",
    # Sweeps
    "DisplacementRow",
    "FreeParticleRow",
    "GhzRow",
    "ParameterRange",
    "Scenario",
    "SweepConfig",
    # Verification
    "CheckResult",
    "VerificationReport",
]
