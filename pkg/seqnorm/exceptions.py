"""Error hierarchy shared by all seqnorm modules."""

from typing import Any, Optional


class SeqnormError(Exception):
    """Base class for every error raised by seqnorm."""


class InvalidDescriptor(SeqnormError, ValueError):
    """A space descriptor is malformed or illegal for the requested operation."""


class NonFinite(SeqnormError, ValueError):
    """An input vector or matrix contains NaN or infinite entries."""


class NoBracket(SeqnormError, ValueError):
    """Bisection endpoints do not bracket a sign change."""


class EmptyGrid(SeqnormError, ValueError):
    """A validation grid has no points."""


class DimensionMismatch(SeqnormError, ValueError):
    """Vectors or matrices with incompatible dimensions were combined."""


class FamilyTooLarge(SeqnormError):
    """Exact sign enumeration was requested for too many family members."""


class MissingAttestation(SeqnormError):
    """A descriptor lacks the convexity/concavity attestation an operation needs."""


class ParameterOrder(SeqnormError, ValueError):
    """Exponents were supplied in the wrong order (for example p >= q)."""


class NonPositiveT(SeqnormError, ValueError):
    """The K-functional parameter t must be strictly positive."""


class InvalidParameter(SeqnormError, ValueError):
    """A scalar parameter is outside its admissible range."""


class ConfigError(SeqnormError):
    """An experiment configuration could not be read or validated."""


class ConvergenceFailure(SeqnormError, RuntimeError):
    """An iterative kernel hit its iteration cap before converging."""


class MaxIterations(ConvergenceFailure):
    """An optimizer ran out of iterations; `result` holds the best point found."""

    def __init__(self, message: str, result: Optional[Any] = None):
        super().__init__(message)
        self.result = result
