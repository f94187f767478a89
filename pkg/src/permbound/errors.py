"""Exception hierarchy shared by all permbound modules."""

from __future__ import annotations


class PermboundError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(PermboundError, ValueError):
    """An argument is outside its documented domain."""


class FieldError(PermboundError, TypeError):
    """An operation received a matrix over the wrong scalar field."""


class SizeError(PermboundError, ValueError):
    """Matrix dimension exceeds the hard cap of an exact algorithm."""


class StructuralError(PermboundError, ValueError):
    """Near-maximal entries collide in a row or column during partitioning.

    Only possible when the operator-norm precondition is violated: a matrix
    with two entries of modulus >= 1 - lambda in one row has row norm > 1.
    """


class MatrixFormatError(PermboundError, ValueError):
    """A matrix file or payload does not match the documented schema."""


class NonConvergenceError(PermboundError, RuntimeError):
    """Power iteration exhausted max_iter with residual above tolerance.

    Carries the best estimate found so far in ``best``.
    """

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best
