"""Exception types shared across the package."""


class CovlatError(Exception):
    """Base class for all library errors."""


class ParseError(CovlatError):
    """Malformed covering file or JSON input."""


class ValidationError(CovlatError):
    """Input violates a documented precondition or invariant."""


class NotAFlatError(ValidationError):
    """A lattice query received a set that is not a flat of the lattice."""


class GuardExceeded(CovlatError):
    """An enumeration guard or size budget was tripped."""


class CriterionNotSatisfied(CovlatError):
    """The requested operator is not a matroidal closure operator here."""


class InternalConsistencyError(CovlatError):
    """Two computations that must agree disagreed; this indicates a bug."""
