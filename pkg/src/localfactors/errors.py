"""Exception types shared across the package.

Every error raised by a computation carries a module tag in its message so
batch output can point at the failing subsystem.
"""


class LocalFactorsError(Exception):
    """Base class for all package errors."""


class UsageError(LocalFactorsError):
    """Caller broke a precondition (mismatched fields, bad partition, ...)."""


class ValidationError(LocalFactorsError):
    """Constructed data is internally inconsistent (e.g. wrong conductor claim)."""


class PrecisionError(LocalFactorsError):
    """A computation needs data beyond the stored truncation level or the
    exponent lattice."""


class AssociationError(LocalFactorsError):
    """Close-field association preconditions failed."""


class PoleError(LocalFactorsError):
    """Numeric evaluation hit a pole; the message names the offending factor."""


class ConsistencyError(LocalFactorsError):
    """An internal identity that must hold by construction failed.

    This signals convention drift (e.g. a tempered epsilon factor that is not
    a monomial) and is always a bug, never a user error.
    """
