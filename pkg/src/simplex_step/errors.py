"""Exception hierarchy for simplex-step.

Every domain error is a ``ValueError`` so callers that only know about
``ValueError`` keep working; the CLI distinguishes them by class.
"""


class SimplexStepError(ValueError):
    """Base class for domain invariant violations."""


class EmptyInput(SimplexStepError):
    """Raised when a sequence that must be non-empty (or have >= 2 entries) is not."""


class NonFiniteInput(SimplexStepError):
    """Raised when an input contains NaN or infinity."""


class NonPositiveSum(SimplexStepError):
    """Raised when weights to be normalized sum to zero or less."""


class DimensionMismatch(SimplexStepError):
    """Raised when two distributions have different numbers of classes."""


class OutOfRange(SimplexStepError):
    """Raised when a scalar argument lies outside its admissible interval."""


class NegativeStep(SimplexStepError):
    """Raised when a step size is negative."""


class NumericOverflow(SimplexStepError):
    """Raised when an exponentiated update cannot be represented in double precision."""


class IdenticalInputs(SimplexStepError):
    """Raised when a ratio would divide by the divergence between identical points."""


class IndexOutOfRange(SimplexStepError):
    """Raised when a class label is outside ``[0, C)``."""


class ConfigError(SimplexStepError):
    """Raised when an experiment configuration document is invalid."""
