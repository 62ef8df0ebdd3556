"""
Exception hierarchy for the optocorr package.

Every error raised on purpose by the library derives from OptocorrError so the
command system can map it to an exit code in one place.
"""


class OptocorrError(Exception):
    """Base class for all library errors."""


class InvalidParameter(OptocorrError, ValueError):
    """A physical or numerical parameter is outside its allowed range."""


class DomainError(InvalidParameter):
    """A function argument lies outside the function's domain."""


class PhysicalityError(OptocorrError):
    """A covariance matrix violates the uncertainty relation."""


class InvalidState(OptocorrError):
    """A covariance matrix has the wrong shape, is not symmetric, or not positive definite."""


class ConvergenceError(OptocorrError):
    """A numerical solve did not reach its residual or quadrature tolerance."""


class SingularSystemError(ConvergenceError):
    """The drift matrix is not stable, so the steady state does not exist."""


class BranchError(OptocorrError):
    """The discord formula was requested outside its implemented branch (det K > 0)."""


class SweepError(InvalidParameter):
    """A sweep row could not be evaluated.

    Attributes:
        x: Abscissa value of the failing row
    """

    def __init__(self, message, x=None):
        super().__init__(message)
        self.x = x
