"""
Exception hierarchy shared by every module.
Each class names the CLI exit code it maps to; solver outcomes that are not
errors (infeasible, undecided, unbounded) are reported as result statuses instead.
"""

from core.config import ExitCodes


class SymredError(Exception):
    """Base class for all library errors."""
    exit_code = ExitCodes.PRECONDITION


class PreconditionError(SymredError, ValueError):
    """An input violates a documented precondition (dimension, degree, shape, ...)."""
    exit_code = ExitCodes.PRECONDITION


class DimensionMismatchError(PreconditionError):
    pass


class NotInvariantError(PreconditionError):
    """
    Raised when an object that must be group invariant is not.

    :param message: Human readable reason
    :param generator: Offending group generator (if known)
    :param item: Offending constraint index / polynomial label (if known)
    """

    def __init__(self, message: str, generator=None, item=None):
        super().__init__(message)
        self.generator = generator
        self.item = item


class RewriteError(PreconditionError):
    """Leading-term elimination stalled: the polynomial is not in the generated algebra."""


class UnsupportedError(SymredError):
    """Requested feature is outside what the library computes (type III, missing irreps, ...)."""
    exit_code = ExitCodes.PRECONDITION


class InconsistentSystemError(SymredError, ValueError):
    exit_code = ExitCodes.INFEASIBLE


class UnderdeterminedError(SymredError, ValueError):
    """A linear identification left free parameters; `dof` reports how many."""
    exit_code = ExitCodes.INFEASIBLE

    def __init__(self, message: str, dof: int):
        super().__init__(message)
        self.dof = dof


class ConvergenceError(SymredError, RuntimeError):
    exit_code = ExitCodes.INFEASIBLE


class InputOutputError(SymredError, OSError):
    """Reading or writing a problem, polynomial or result file failed."""
    exit_code = ExitCodes.IO


class SdpaFormatError(InputOutputError):
    """Malformed SDPA text."""
