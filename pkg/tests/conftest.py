import random
from fractions import Fraction
from pathlib import Path

import pytest

from matprime.expr import parse_ratfunc
from matprime.linalg import Mat
from matprime.ratfunc import Poly, RatFunc

DATA = Path(__file__).resolve().parent.parent / "data"


def rf(s: str) -> RatFunc:
    return parse_ratfunc(s)


def mat(rows) -> Mat:
    return Mat([[rf(e) if isinstance(e, str) else e for e in row] for row in rows])


def rank_one_example() -> Mat:
    """The pinned 3x3 rank-one nilpotent example (entries t^2 .. t^4)."""
    return mat(
        [
            ["t^2", "t^3", "t^4"],
            ["-2*t", "-2*t^2", "-2*t^3"],
            ["1", "t", "t^2"],
        ]
    )


def sixbysix_example() -> Mat:
    """[[M, I], [0, M]] over the rank-one example M."""
    m = rank_one_example()
    ident = Mat.identity(3)
    zero = Mat.zero(3)
    rows = []
    for i in range(3):
        rows.append(list(m.rows[i]) + list(ident.rows[i]))
    for i in range(3):
        rows.append(list(zero.rows[i]) + list(m.rows[i]))
    return Mat(rows)


def ninebynine_example() -> Mat:
    """Strictly block-upper matrix with the rank-one example on the first
    superdiagonal blocks."""
    m = rank_one_example()
    zero = Mat.zero(3)
    grid = [
        [zero, m, zero],
        [zero, zero, m],
        [zero, zero, zero],
    ]
    rows = []
    for block_row in grid:
        for i in range(3):
            rows.append([x for block in block_row for x in block.rows[i]])
    return Mat(rows)


def random_rational(rng: random.Random, span: int = 6) -> Fraction:
    num = rng.randint(-span, span)
    den = rng.randint(1, span)
    return Fraction(num, den)


def random_poly(rng: random.Random, max_degree: int = 3, span: int = 5) -> Poly:
    deg = rng.randint(0, max_degree)
    coeffs = [rng.randint(-span, span) for _ in range(deg + 1)]
    if all(c == 0 for c in coeffs):
        coeffs[-1] = 1
    return Poly.from_coeffs(coeffs)


def random_ratfunc(
    rng: random.Random, max_degree: int = 3, span: int = 5, allow_zero: bool = True
) -> RatFunc:
    num = random_poly(rng, max_degree, span)
    den = random_poly(rng, max_degree, span)
    while den.is_zero():
        den = random_poly(rng, max_degree, span)
    f = RatFunc(num, den)
    if not allow_zero and f.is_zero():
        return RatFunc.from_const(1)
    return f


def random_constant_matrix(rng: random.Random, n: int, span: int = 4) -> Mat:
    return Mat(
        [
            [RatFunc.from_const(rng.randint(-span, span)) for _ in range(n)]
            for _ in range(n)
        ]
    )


def random_invertible_constant(rng: random.Random, n: int, span: int = 3) -> Mat:
    from matprime.linalg import det

    while True:
        m = random_constant_matrix(rng, n, span)
        if not det(m).is_zero():
            return m


@pytest.fixture
def rng():
    return random.Random(20260809)
