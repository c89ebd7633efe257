"""Exact linear algebra over Q(t) for matrices that commute with their
derivative: Wronskian independence tests, Type 1/2/3 classification with
constructive witnesses, constant-projector block decomposition and
K-diagonalization, plus a float Gauss-Newton experiment on the quadratic
commutator equations of polynomial matrices.
"""

from matprime._kernel import BACKEND as kernel_backend
from matprime.errors import (
    ContradictionError,
    DimensionMismatch,
    DivisionByZero,
    HypothesisViolated,
    MatPrimeError,
    NoWitness,
    NotCoprime,
    NotIdempotent,
    NotInSpan,
    NumericalBreakdown,
    ParseError,
    PoleAtPoint,
    ShapeError,
    ZeroDenominator,
)
from matprime.expr import parse_ratfunc
from matprime.linalg import Mat, PolyF, commutator
from matprime.ratfunc import Poly, RatFunc, Rational, T

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "kernel_backend",
    "Mat",
    "Poly",
    "PolyF",
    "RatFunc",
    "Rational",
    "T",
    "commutator",
    "parse_ratfunc",
    "MatPrimeError",
    "ZeroDenominator",
    "DivisionByZero",
    "PoleAtPoint",
    "DimensionMismatch",
    "NotInSpan",
    "NotCoprime",
    "NotIdempotent",
    "NoWitness",
    "HypothesisViolated",
    "ContradictionError",
    "NumericalBreakdown",
    "ParseError",
    "ShapeError",
]
