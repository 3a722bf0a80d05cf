"""Exception hierarchy shared by every module."""


class ConstaError(Exception):
    """Base class for all package errors."""


class ValidationError(ConstaError, ValueError):
    """Bad input: parameters violate a stated precondition."""


class ResourceError(ConstaError):
    """A configured size cap (field table, enumeration, oracle) was exceeded."""


class DomainError(ConstaError, ArithmeticError):
    """Mathematically undefined operation, e.g. inverting zero."""


class ConsistencyError(ConstaError, AssertionError):
    """An internal identity failed; always indicates a bug or a false formula."""
