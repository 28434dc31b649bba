"""Exception and warning types shared across the package."""


class ChaoslabError(Exception):
    """Base class for all package-specific errors."""


class DomainError(ChaoslabError, ValueError):
    """A parameter or argument lies outside its mathematical domain."""


class DiscreteFamilyError(ChaoslabError, TypeError):
    """Density requested for a family that has no Lebesgue density."""


class MomentDoesNotExistError(ChaoslabError, ValueError):
    """The requested absolute moment is infinite for this family."""


class QuadratureFailure(ChaoslabError, ArithmeticError):
    """Adaptive quadrature could not reach the requested tolerance."""


class TailUnderflowError(ChaoslabError, ArithmeticError):
    """Tail probability underflows on the whole evaluation grid."""


class DimensionMismatchError(ChaoslabError, ValueError):
    """Vector argument has the wrong length for the index set."""


class EmptySubdivisionError(ChaoslabError, ValueError):
    """A variation seminorm was given no usable subdivision levels."""


class EmptySampleError(ChaoslabError, ValueError):
    """An empirical estimator received an empty sample."""


class UnsupportedScaleError(ChaoslabError, ValueError):
    """The base law has no convolution-semigroup member at this scale."""


class ConfigError(ChaoslabError, ValueError):
    """An experiment configuration failed validation."""


class SlowDecayWarning(UserWarning):
    """Truncation error of an improper integral exceeds the target tolerance."""


class HypothesisViolationWarning(UserWarning):
    """A construction violates a hypothesis needed by the norm-equivalence results."""
