"""Exception hierarchy shared by every hblab module."""


class HBLabError(Exception):
    """Base class for all library errors."""


class DomainError(HBLabError, ValueError):
    """A point or parameter lies outside the domain of an operation."""


class QuadratureError(HBLabError, RuntimeError):
    """An integral did not reach its tolerance within the subdivision budget."""


class TruncationError(HBLabError, RuntimeError):
    """A series tail bound exceeds the requested tolerance."""


class ConditioningError(HBLabError, ValueError):
    """A linear system is too ill-conditioned for the requested accuracy."""


class AliasingError(HBLabError, ValueError):
    """Angular sampling is too coarse for the requested number of modes."""


class NonFiniteSampleError(HBLabError, FloatingPointError):
    """A field evaluation returned NaN or infinity at an interior sample."""


class NonPositiveSupError(HBLabError, ValueError):
    """A log-scale growth fit received a sup value that is not positive."""


class HypothesisViolation(HBLabError, ValueError):
    """A sampled hypothesis check failed; ``witness`` holds the offending point."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class RegularityMismatch(HBLabError, ValueError):
    """A field's claimed regularity does not match what an auditor requires."""


class SpectrumHitError(HBLabError, ZeroDivisionError):
    """A spectral parameter coincides with an eigenvalue of a diagonal model."""

    def __init__(self, message, indices=()):
        super().__init__(message)
        self.indices = tuple(indices)


class SingularSolveError(HBLabError, ArithmeticError):
    """A dense resolvent solve failed or missed its residual target."""


class EvolutionOverflowError(HBLabError, OverflowError):
    """A matrix exponential would overflow double precision."""


class HorizonError(HBLabError, ValueError):
    """A truncated Laplace-type integral cannot meet its tail tolerance."""


class ConfigError(HBLabError, ValueError):
    """An experiment configuration is malformed or references unknown names."""
