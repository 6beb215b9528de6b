"""Exceptions raised when a mathematical precondition fails."""


class PreconditionError(ValueError):
    """Base class; the CLI maps these to exit code 2."""


class DependentForms(PreconditionError):
    """The two linear entries are linearly dependent, so p(A) is undefined."""


class NotInX(PreconditionError):
    """The matrix has dependent linear entries or vanishing determinant."""


class NotInX8(PreconditionError):
    """The quadratic entries do not both vanish at p(A): the sheaf is non-singular."""


class NotSpecialForm(PreconditionError):
    """The linear entries are not (x1, x2)."""


class TangentDirection(PreconditionError):
    """The direction is tangent to X8; the limit sheaf is not locally free on its support."""


class DegenerateConic(PreconditionError):
    """The conic is identically zero."""


class OutOfRange(PreconditionError):
    """A requested bidegree lies outside the supported range."""


class FitFailure(PreconditionError):
    """Sampled dimensions do not lie on a polynomial of the expected degree."""


class SampleInX8(PreconditionError):
    """A nonzero parameter of a family A + tB landed in X8."""
