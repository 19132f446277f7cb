"""Exception hierarchy.

Two families matter to callers: :class:`InputError` (malformed data, exit
status 2 on the command line) and :class:`PreconditionError` (a valid input
that violates a mathematical requirement, exit status 3).
"""


class MatrixMeansError(ValueError):
    """Base class for every error raised by this package."""


class InputError(MatrixMeansError):
    pass


class PreconditionError(MatrixMeansError):
    pass


class AsymmetricInput(InputError):
    pass


class NonFinite(InputError):
    pass


class DimMismatch(InputError):
    pass


class InvalidParameter(InputError):
    pass


class NotPositiveSemidefinite(PreconditionError):
    pass


class NotPositiveDefinite(PreconditionError):
    pass


class NonFiniteResult(PreconditionError):
    pass


class DegenerateWeight(PreconditionError):
    pass


class NoConvergence(MatrixMeansError):
    pass


class SingularKKT(MatrixMeansError):
    """The KKT system of a proximal-average oracle could not be solved.

    For valid inputs the system is always nonsingular, so this signals a bug.
    """
