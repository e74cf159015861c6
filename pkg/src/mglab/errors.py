"""Exception types shared across the package."""


class MglabError(Exception):
    """Base class for all mglab errors."""


class NonUnitaryError(MglabError):
    """A matrix that should be unitary is not, beyond tolerance."""


class InvalidWireError(MglabError):
    """A gate touches a wire outside the circuit or a non-adjacent pair."""


class OverlappingGatesError(MglabError):
    """Two gates in the same layer share a wire."""


class NotAMatchgateError(MglabError):
    """A custom gate fails the matchgate block-structure test."""


class TooLargeError(MglabError):
    """Input exceeds the desk-scale guard for exact enumeration."""


class DimensionMismatchError(MglabError):
    """Two distributions with different bit counts were combined."""


class LengthMismatchError(MglabError):
    """A bitstring has the wrong length for the object it is applied to."""


class DegenerateStateError(MglabError):
    """Normalization sum underflowed; the state is numerically zero."""


class RangeViolationError(MglabError):
    """A query or evaluator returned a value outside its declared range."""


class ToleranceRiskError(MglabError):
    """Configured shot count cannot meet the oracle tolerance contract."""


class PromiseViolatedError(MglabError):
    """Input does not satisfy the promise an algorithm relies on."""


class InconsistentSamplesError(MglabError):
    """A linear system built from samples has no solution."""


class SecretNotFoundError(MglabError):
    """Exhaustive search finished without any candidate passing."""
