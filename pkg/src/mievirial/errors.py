"""Exception hierarchy shared by all modules."""


class MieVirialError(Exception):
    """Base class for every error raised by this package."""


class DomainError(MieVirialError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class ParameterError(DomainError):
    """Invalid hypergeometric parameters (e.g. a lower parameter at a pole)."""


class PoleError(DomainError):
    """A gamma function was asked for its value at a pole.

    ``index`` carries the summation index at which the pole was met, when the
    pole arises inside a series.
    """

    def __init__(self, message, argument=None, index=None):
        super().__init__(message)
        self.argument = argument
        self.index = index


class GammaOverflowError(MieVirialError, OverflowError):
    """|Gamma(x)| does not fit in a double; use ``log_gamma`` instead."""


class ConvergenceError(MieVirialError, ArithmeticError):
    """A series or iteration exhausted its budget before converging.

    ``evaluation`` holds the best partial result (usually a
    :class:`~mievirial.specfun.SeriesEvaluation`).
    """

    def __init__(self, message, evaluation=None):
        super().__init__(message)
        self.evaluation = evaluation


class ToleranceNotMetError(ConvergenceError):
    """Adaptive quadrature hit its subdivision cap; ``evaluation`` is the report."""


class SingularSystemError(MieVirialError, ArithmeticError):
    """The bracket system for a choice of free indices is singular."""


class NonRealSeriesError(MieVirialError, ValueError):
    """A basis series carries a non-integer power of -1."""


class BracketNotFoundError(MieVirialError, ArithmeticError):
    """No sign change of B was found while bracketing a root."""
