"""Exception hierarchy shared by every module of the package."""


class GridRBFError(Exception):
    """Base class for all errors raised by gridrbf."""


class DomainError(GridRBFError, ValueError):
    """An argument lies outside the domain of the operation."""


class PoleError(DomainError):
    """Evaluation requested at a pole (e.g. a symbol at a lattice point)."""


class UnsupportedError(GridRBFError, NotImplementedError):
    """The requested order, kernel or dimension is not supported."""


class SingularMatrixError(GridRBFError, ArithmeticError):
    """A factorization met an exactly zero pivot."""


class BreakdownError(GridRBFError, ArithmeticError):
    """A Krylov recurrence produced a non-finite or zero denominator."""

    def __init__(self, message, iteration=None):
        super().__init__(message)
        self.iteration = iteration


class IndefinitePreconditionerError(GridRBFError, ArithmeticError):
    """A constructed preconditioner failed its positivity certificate."""


class BracketError(GridRBFError, ArithmeticError):
    """A root-finding bracket could not be established."""


class SizeError(DomainError):
    """A dense computation would exceed the supported order."""


class ResolutionError(GridRBFError, ArithmeticError):
    """A quadrature grid is too coarse for the requested accuracy."""


class NotAlmostNegativeDefinite(GridRBFError, ValueError):
    """Raised when a matrix is not AND; carries the violating zero-sum vector."""

    def __init__(self, message, witness=None, eigenvalue=None):
        super().__init__(message)
        self.witness = witness
        self.eigenvalue = eigenvalue


class PreconditionError(DomainError):
    """A documented precondition of a construction does not hold."""
