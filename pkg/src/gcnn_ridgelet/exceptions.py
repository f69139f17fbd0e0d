"""Exception hierarchy shared by every module of the toolkit."""


class RidgeletError(Exception):
    """Base class for all toolkit errors."""


class InvalidArgument(RidgeletError, ValueError):
    """Malformed input: dimension mismatch, unknown element, bad option."""


class PreconditionViolation(RidgeletError, ValueError):
    """Input is well formed but violates a numerical precondition."""


class NumericFailure(RidgeletError, ArithmeticError):
    """A quadrature or evaluation produced non-finite values."""


class DegeneratePairError(RidgeletError, ArithmeticError):
    """The activation/ridgelet scalar product vanishes (or is not finite)."""


class ResourceLimitError(RidgeletError, MemoryError):
    """A grid or network would exceed the configured size cap."""
