"""Exception hierarchy shared by all modules.

The CLI maps each family to an exit code, so new error types should
subclass one of these four roots.
"""


class OutcountError(Exception):
    """Base class for every error raised by this package."""


class InvalidInputError(OutcountError, ValueError):
    """Malformed word, mismatched rank, bad parameter."""


class ProperPowerError(InvalidInputError):
    """A relator was a proper power where that is not allowed."""


class PreconditionError(InvalidInputError):
    """An operation was called on input outside its domain (e.g. reducible matrix)."""


class DegenerateOrbitError(InvalidInputError):
    """An iterated word collapsed to the identity."""


class ResourceLimitError(OutcountError):
    """A configured size cap would be exceeded."""


class NonConvergenceError(OutcountError):
    """An iterative method hit its iteration cap.

    ``best`` carries the last estimate so callers can still inspect it.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class IndeterminateError(OutcountError):
    """A closure computation ran past its cap before stabilizing."""
