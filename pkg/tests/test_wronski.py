"""Wronskian independence tests and the canonical constant expansion."""

import random
from fractions import Fraction

import pytest

from matprime.errors import NotInSpan
from matprime.linalg import Mat, det, inverse
from matprime.ratfunc import RatFunc
from matprime.wronski import (
    canonical_decomposition,
    constant_coordinates,
    constant_rank,
    wronski_matrix,
)

from .conftest import (
    random_invertible_constant,
    random_ratfunc,
    rank_one_example,
    rf,
)


def test_wronski_matrix_examples():
    fs = [rf("1"), rf("t"), rf("t^2")]
    w = wronski_matrix(fs, 3)
    assert w == Mat(
        [
            [rf("1"), rf("t"), rf("t^2")],
            [rf("0"), rf("1"), rf("2*t")],
            [rf("0"), rf("0"), rf("2")],
        ]
    )
    assert det(w) == rf("2")
    assert wronski_matrix([rf("t")], 1) == Mat([[rf("t")]])


def test_constant_rank_examples():
    assert constant_rank([rf("1"), rf("t"), rf("t^2")]).rank_over_K == 3
    rep = constant_rank([rf("t"), rf("t^2+t"), rf("t^2")])
    assert rep.rank_over_K == 2
    assert rep.basis_indices == (0, 1)
    assert constant_rank([rf("t"), rf("2*t")]).rank_over_K == 1
    assert constant_rank([rf("0"), rf("0")]).rank_over_K == 0


def test_certificate_is_nonsingular():
    rep = constant_rank([rf("1/t"), rf("1/(t-1)"), rf("2/t")])
    assert rep.rank_over_K == 2
    assert not det(rep.certificate).is_zero()


def test_constant_coordinates_examples():
    basis = [rf("1"), rf("t")]
    assert constant_coordinates(rf("3*t-2"), basis) == [
        Fraction(-2),
        Fraction(3),
    ]
    with pytest.raises(NotInSpan):
        constant_coordinates(rf("t^2"), basis)
    assert constant_coordinates(rf("(t^2+t)/t"), basis) == [
        Fraction(1),
        Fraction(1),
    ]
    with pytest.raises(NotInSpan):
        constant_coordinates(rf("t"), [])
    assert constant_coordinates(rf("0"), []) == []


def _eval_rank_over_q(fs, points):
    """Independent oracle: rank over Q of the evaluation matrix certifies
    K-independence (a vanishing constant combination would make every
    value column dependent with the same coefficients)."""
    rows = []
    for f in fs:
        rows.append([f.eval_at(x) for x in points])
    # fraction Gaussian elimination
    rank = 0
    cols = len(points)
    mat = [row[:] for row in rows]
    r = 0
    for c in range(cols):
        sel = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if sel is None:
            continue
        mat[r], mat[sel] = mat[sel], mat[r]
        piv = mat[r][c]
        mat[r] = [x / piv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        r += 1
        rank += 1
    return rank


def test_frobenius_both_directions(rng):
    """Constructed independent families have full Wronskian rank;
    constructed dependences drop it accordingly."""
    pool = ["1", "t", "t^2", "t^3", "1/t", "1/(t-1)", "1/(t+1)", "t/(t-2)"]
    points = [3, 4, 5, 6, 7, 8, 9, 10, 11, 12]
    for _ in range(25):
        size = rng.randint(2, 4)
        fs = [rf(s) for s in rng.sample(pool, size)]
        oracle = _eval_rank_over_q(fs, points)
        if oracle == size:
            assert constant_rank(fs).rank_over_K == size
        # append an explicit dependence: rank must not grow
        weights = [rng.randint(-3, 3) for _ in fs]
        extra = sum((f * w for f, w in zip(fs, weights)), rf("0"))
        rep = constant_rank(fs + [extra])
        assert rep.rank_over_K == constant_rank(fs).rank_over_K


def test_canonical_decomposition_examples():
    m = Mat.diag([rf("t"), rf("t^2")])
    d = canonical_decomposition(m)
    assert d.basis == (rf("t"), rf("t^2"))
    assert d.constants[0] == Mat.diag([rf("1"), rf("0")])
    assert d.constants[1] == Mat.diag([rf("0"), rf("1")])

    const = Mat([[rf("1"), rf("2")], [rf("3"), rf("4")]])
    dc = canonical_decomposition(const)
    assert dc.rank_over_K == 1 and dc.basis == (rf("1"),)
    assert dc.constants[0] == const

    ma = rank_one_example()
    dm = canonical_decomposition(ma)
    assert dm.rank_over_K == 5
    assert dm.reconstruct() == ma


def test_zero_matrix_decomposition():
    d = canonical_decomposition(Mat.zero(2))
    assert d.rank_over_K == 0 and d.reconstruct() == Mat.zero(2)


def test_reconstruction_random(rng):
    for _ in range(10):
        m = Mat(
            [[random_ratfunc(rng, 2, 3) for _ in range(2)] for _ in range(2)]
        )
        d = canonical_decomposition(m)
        assert d.reconstruct() == m
        for c in d.constants:
            assert c.is_constant()


def test_rank_invariant_under_constant_similarity(rng):
    for _ in range(6):
        m = Mat(
            [[random_ratfunc(rng, 2, 2) for _ in range(2)] for _ in range(2)]
        )
        t0 = random_invertible_constant(rng, 2)
        conj = inverse(t0) * m * t0
        assert (
            canonical_decomposition(conj).rank_over_K
            == canonical_decomposition(m).rank_over_K
        )
