"""Exception hierarchy for the whole package."""


class MatPrimeError(Exception):
    """Base class for every error raised by matprime."""


class ZeroDenominator(MatPrimeError):
    """Rational function constructed with a zero denominator."""


class DivisionByZero(MatPrimeError, ZeroDivisionError):
    """Field division or inversion of zero."""


class PoleAtPoint(MatPrimeError):
    """Evaluation of a rational function at a pole."""


class DimensionMismatch(MatPrimeError):
    """Matrix operands with non-conforming shapes."""


class NotInSpan(MatPrimeError):
    """A function is not a constant-coefficient combination of the given basis."""


class NotCoprime(MatPrimeError):
    """Factors handed to the partition of unity are not pairwise coprime."""


class NotIdempotent(MatPrimeError):
    """Matrix fed to the idempotent constancy check with N*N != N."""


class NoWitness(MatPrimeError):
    """Requested constructive witness does not exist for the given input."""


class HypothesisViolated(MatPrimeError):
    """Input does not commute with its derivative, violating the hypothesis
    of the decomposition being requested."""


class ContradictionError(MatPrimeError):
    """An internal consistency assertion backed by a proved statement fired.
    Must never happen; indicates a bug, not bad input."""


class NumericalBreakdown(MatPrimeError):
    """The least-squares subproblem of the float solver failed."""


class ParseError(MatPrimeError):
    """Syntax error in an expression, with position information."""

    def __init__(self, message, line, column, token=None):
        self.message = message
        self.line = line
        self.column = column
        self.token = token
        where = f"line {line}, column {column}"
        if token:
            super().__init__(f"{message} at {where} (near {token!r})")
        else:
            super().__init__(f"{message} at {where}")


class ShapeError(MatPrimeError):
    """Matrix file whose entry grid is not square / malformed."""
