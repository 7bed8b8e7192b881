"""Exception types raised across the package."""


class AccessorControlError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(AccessorControlError, ValueError):
    """Operator dimensions are incompatible (mismatch or bad factorisation)."""


class DimensionCapError(DimensionError):
    """A tensor product would exceed the configured dimension cap."""


class IndexRangeError(AccessorControlError, IndexError):
    """A level, state or matrix index is out of range."""


class SpecValidationError(AccessorControlError, ValueError):
    """A system, accessor or coupling specification is invalid.

    ``field`` names the offending entry (a dotted config path when known).
    """

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field

    def __str__(self):
        msg = super().__str__()
        if self.field:
            return f"{self.field}: {msg}"
        return msg


class InvalidCouplingError(SpecValidationError):
    """An accessor chain coupling constant is zero."""


class InvalidKeyError(SpecValidationError):
    """A coupling entry refers to a transition or Pauli string that does not exist."""


class NotSkewHermitianError(AccessorControlError, ValueError):
    """A Lie-algebra generator is not traceless skew-Hermitian."""


class MaxBasisExceededError(AccessorControlError, RuntimeError):
    """The closure basis grew beyond ``ClosureConfig.max_basis``."""


class OracleTooLargeError(AccessorControlError, ValueError):
    """The brute-force closure oracle was asked for an instance beyond its range."""


class DegenerateSamplerError(AccessorControlError, RuntimeError):
    """Random coupling draws repeatedly failed the rank condition."""
