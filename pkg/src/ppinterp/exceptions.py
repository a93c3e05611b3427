"""Exception types shared across the package."""


class InterpError(Exception):
    """Base class for all errors raised by ppinterp."""


class InvalidArgumentError(InterpError, ValueError):
    """An argument is malformed, out of range or inconsistent."""


class DomainError(InterpError, ValueError):
    """A point lies outside the domain of a function or interpolant."""


class PreconditionError(InterpError, ValueError):
    """Input data violates a method precondition (e.g. data below the PPI floor)."""


class UnsupportedDegreeError(InterpError, ValueError):
    """Requested polynomial degree exceeds what the backend supports."""
