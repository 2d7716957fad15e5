"""Domain errors.

Every error derives from ValueError so callers that only care about bad
input can keep catching the builtin.
"""


class SpeedLimitError(ValueError):
    """Base error for the witness library."""


class DimensionMismatchError(SpeedLimitError):
    """Operator and state dimensions disagree."""


class EmptyAssemblageError(SpeedLimitError):
    """An assemblage without settings was used in a computation."""


class MismatchedAssemblageError(SpeedLimitError):
    """Two assemblages that should share outcome tables do not."""


class InvalidModelError(SpeedLimitError):
    """A local hidden state model violates its normalization constraints."""


class NonPhysicalStateError(SpeedLimitError):
    """A state violates positivity or the uncertainty principle."""


class DenseSizeError(SpeedLimitError):
    """A dense simulation would exceed the configured qubit guard."""


class UnitsError(SpeedLimitError):
    """A closed form was requested outside the units it is valid in."""


class UnsupportedFunctionalError(SpeedLimitError):
    """The oracle was asked for a moment functional it does not know."""


class SweepConfigError(SpeedLimitError):
    """A sweep configuration is empty or out of range."""
