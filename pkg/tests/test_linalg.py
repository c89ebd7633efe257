"""Exact matrix algebra, elimination, minimal/characteristic polynomials."""

import random

import pytest

from matprime.errors import DimensionMismatch, DivisionByZero
from matprime.linalg import (
    Mat,
    PolyF,
    char_polynomial,
    commutator,
    det,
    inverse,
    is_nonderogatory,
    minimal_polynomial,
    polyf_ext_gcd,
    polyf_gcd,
    rank_and_nullspace,
)
from matprime.ratfunc import RF_ZERO

from .conftest import (
    mat,
    random_ratfunc,
    rank_one_example,
    rf,
    sixbysix_example,
)


def _random_mat(rng, n, deg=2):
    return Mat([[random_ratfunc(rng, deg, 3) for _ in range(n)] for _ in range(n)])


# -- arithmetic ----------------------------------------------------------------


def test_mat_mul_examples():
    m = rank_one_example()
    assert Mat.identity(3) * m == m
    assert (m * m).is_zero()
    assert Mat.identity(2).scale(rf("t")) == Mat.diag([rf("t"), rf("t")])


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        Mat.identity(2) * Mat.identity(3)
    with pytest.raises(DimensionMismatch):
        Mat.identity(2) + Mat.zero(3)


def test_derivative_examples():
    m = rank_one_example()
    mp = m.derivative()
    assert [str(x) for x in mp.rows[0]] == ["2*t", "3*t^2", "4*t^3"]
    assert mat([["1", "2"], ["3", "4"]]).derivative().is_zero()
    assert Mat.diag([rf("t"), rf("t^2")]).derivative() == Mat.diag(
        [rf("1"), rf("2*t")]
    )


def test_product_rule(rng):
    for _ in range(10):
        a = _random_mat(rng, 3, 1)
        b = _random_mat(rng, 3, 1)
        assert (a * b).derivative() == a.derivative() * b + a * b.derivative()


def test_commutator_examples():
    m = rank_one_example()
    assert commutator(m, m.derivative()).is_zero()
    d1 = m.derivative()
    d2 = d1.derivative()
    assert not commutator(d1, d2).is_zero()
    assert commutator(m, m).is_zero()


def test_commutator_with_polynomial_in_matrix(rng):
    for _ in range(6):
        a = _random_mat(rng, 3, 1)
        p = PolyF([random_ratfunc(rng, 1, 2) for _ in range(3)])
        assert commutator(a, p.at_matrix(a)).is_zero()


# -- elimination ------------------------------------------------------------------


def test_rank_and_nullspace_examples():
    m = rank_one_example()
    r, basis = rank_and_nullspace(m)
    assert r == 1 and len(basis) == 2
    a6 = sixbysix_example()
    second = a6.derivative().derivative()
    r2, basis2 = rank_and_nullspace(second)
    assert r2 == 6 and not basis2
    r3, basis3 = rank_and_nullspace(Mat.identity(4))
    assert r3 == 4 and not basis3


def test_nullspace_annihilates(rng):
    for _ in range(8):
        m = _random_mat(rng, 3, 1)
        r, basis = rank_and_nullspace(m)
        assert r + len(basis) == 3
        for v in basis:
            image = [
                sum((m[i, j] * v[j] for j in range(3)), RF_ZERO) for i in range(3)
            ]
            assert all(x.is_zero() for x in image)


def test_det_and_inverse(rng):
    assert det(Mat.identity(3)) == rf("1")
    m = mat([["t", "1"], ["0", "t^2"]])
    assert det(m) == rf("t^3")
    assert inverse(m) * m == Mat.identity(2)
    with pytest.raises(DivisionByZero):
        inverse(rank_one_example())
    for _ in range(5):
        a = _random_mat(rng, 3, 1)
        if det(a).is_zero():
            continue
        assert a * inverse(a) == Mat.identity(3)


# -- minimal / characteristic polynomials -----------------------------------------


def test_minimal_polynomial_examples():
    m = rank_one_example()
    x = PolyF.variable()
    assert minimal_polynomial(m) == x * x
    d = Mat.diag([rf("t"), rf("t"), rf("1/t")])
    assert minimal_polynomial(d) == PolyF.linear(rf("t")) * PolyF.linear(rf("1/t"))
    a6 = sixbysix_example()
    assert minimal_polynomial(a6) == x * x * x
    assert not (a6 * a6).is_zero()


def test_char_polynomial_examples():
    x = PolyF.variable()
    d = Mat.diag([rf("t"), rf("t^2")])
    assert char_polynomial(d) == PolyF.linear(rf("t")) * PolyF.linear(rf("t^2"))
    assert char_polynomial(rank_one_example()) == x ** 3
    assert char_polynomial(Mat.identity(2)) == PolyF.linear(rf("1")) ** 2


def test_min_divides_char(rng):
    for _ in range(8):
        m = _random_mat(rng, 3, 1)
        mp = minimal_polynomial(m)
        cp = char_polynomial(m)
        q, r = divmod(cp, mp)
        assert r.is_zero()
        assert mp.at_matrix(m).is_zero()
        assert cp.at_matrix(m).is_zero()


def test_char_specializes_to_eigenvalues():
    d = Mat.diag([rf("t"), rf("t^2"), rf("5")])
    cp = char_polynomial(d)
    for e in (rf("t"), rf("t^2"), rf("5")):
        assert cp(e).is_zero()


def test_is_nonderogatory_examples():
    assert not is_nonderogatory(rank_one_example())
    jordan = mat([["0", "1", "0"], ["0", "0", "1"], ["0", "0", "0"]])
    assert is_nonderogatory(jordan)
    assert not is_nonderogatory(Mat.diag([rf("t"), rf("t")]))


# -- PolyF ---------------------------------------------------------------------


def test_polyf_ext_gcd_examples():
    x = PolyF.variable()
    g, u, v = polyf_ext_gcd(x * x, PolyF.linear(rf("t")))
    assert g.is_one()
    assert u * (x * x) + v * PolyF.linear(rf("t")) == g
    g2, u2, v2 = polyf_ext_gcd(PolyF.linear(rf("1")), PolyF.linear(rf("1")))
    assert g2 == PolyF.linear(rf("1"))
    a = PolyF([rf("0-t^2"), rf("0"), rf("1")])  # x^2 - t^2
    g3, u3, v3 = polyf_ext_gcd(a, PolyF.linear(rf("t")))
    assert g3 == PolyF.linear(rf("t"))
    assert u3 * a + v3 * PolyF.linear(rf("t")) == g3


def test_polyf_ext_gcd_random(rng):
    for _ in range(15):
        a = PolyF([random_ratfunc(rng, 1, 2) for _ in range(rng.randint(1, 4))])
        b = PolyF([random_ratfunc(rng, 1, 2) for _ in range(rng.randint(1, 4))])
        if a.is_zero() and b.is_zero():
            continue
        g, u, v = polyf_ext_gcd(a, b)
        assert u * a + v * b == g
        if not g.is_zero():
            assert g.is_monic()
            if not a.is_zero():
                assert (a % g).is_zero()
            if not b.is_zero():
                assert (b % g).is_zero()


def test_polyf_eval_at_matrix():
    m = rank_one_example()
    x = PolyF.variable()
    assert (x * x).at_matrix(m).is_zero()
    assert PolyF.constant(1).at_matrix(m) == Mat.identity(3)
    d = Mat.diag([rf("t"), rf("t^2")])
    assert PolyF.linear(rf("t")).at_matrix(d) == Mat.diag([rf("0"), rf("t^2-t")])


def test_polyf_gcd():
    x = PolyF.variable()
    a = (x - rf("t")) * (x - rf("1"))
    b = (x - rf("t")) * (x - rf("2"))
    assert polyf_gcd(a, b) == x - rf("t")
