"""Exception types raised across the package."""

from __future__ import annotations


class QbrachError(Exception):
    """Base class for all package errors."""


class ParameterError(QbrachError, ValueError):
    """A model or problem parameter lies outside its admissible domain."""


class SingularMatrix(QbrachError, ArithmeticError):
    pass


class ExceptionalPoint(QbrachError, ArithmeticError):
    """Eigenvalues and eigenvectors of a 2x2 matrix coalesce."""


class DegenerateMetric(ParameterError):
    """cos(alpha) vanishes, so the metric operator is undefined."""


class BrokenPtSymmetry(ParameterError):
    pass


class ComplexFrequency(ParameterError):
    pass


class NegativeDecayWidth(ParameterError):
    pass


class AhatSingular(ParameterError):
    """The complex metric parameter cannot be extracted from its defining ratio."""


class QuadratureFailure(QbrachError, RuntimeError):
    pass


class NoClosedForm(QbrachError, LookupError):
    pass


class NoRoot(QbrachError, RuntimeError):
    """No sign change (or touching extremum) of the residual on the scan grid.

    Attributes:
        min_abs: smallest |residual| seen on the grid.
        t_at_min: where it was attained.
    """

    def __init__(self, message: str, min_abs: float = float("nan"), t_at_min: float = float("nan")):
        super().__init__(message)
        self.min_abs = min_abs
        self.t_at_min = t_at_min
