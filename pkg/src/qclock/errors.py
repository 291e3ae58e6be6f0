"""Exception hierarchy for the qclock toolkit.

Every error raised by the library subclasses :class:`ClockError` and carries a
short machine-readable ``code`` so front ends can map failures to structured
error objects without parsing messages.
"""


class ClockError(Exception):
    """Base class for all qclock errors."""

    code = "error"

    def __init__(self, message, detail=None):
        super().__init__(message)
        self.message = message
        self.detail = detail if detail is not None else {}


class DimensionMismatchError(ClockError):
    """Operands live on incompatible Hilbert spaces."""

    code = "dimension-mismatch"


class ValidationError(ClockError):
    """A matrix fails a structural invariant (hermiticity, positivity, trace)."""

    code = "invalid-matrix"


class DomainError(ClockError):
    """A scalar argument is outside the operation's domain."""

    code = "domain"


class PreconditionError(ClockError):
    """An operation's precondition (CPTP validity, covariance) does not hold."""

    code = "precondition"


class NumericalDegeneracyError(ClockError):
    """A numerically degenerate decomposition could not be certified."""

    code = "numerical-degeneracy"


class SupportError(ClockError):
    """A finite-difference step moved probability onto zero-probability points."""

    code = "numerical-support"


class ConfigError(ClockError):
    """A sweep configuration is missing or misuses a field."""

    code = "config"
