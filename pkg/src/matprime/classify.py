"""Deciding MM' = M'M and membership in Types 1/2/3, with witnesses.

Type 1: M = sum f_j C_j, f_j in Q(t), C_j constant and pairwise commuting.
        Decided soundly and completely through the canonical entrywise
        expansion: M is Type 1 iff its canonical constants commute (the
        expansion's coefficients are recovered from derivatives of M, so
        pairwise commutation of all derivatives forces it and conversely).
Type 2: M = f g^T with f^T g = f^T g' = 0; forces M^2 = MM' = M'M = 0.
        A matrix is Type 2 iff it has rank one over Q(t), squares to zero
        and satisfies MM' = M'M; the witness is built from a column and
        assert-checked rather than trusted.
Type 3: M = h I + (Type 2); h is forced to be trace(M)/n.  Reports require
        h != 0 so Types 2 and 3 stay disjoint in output (mathematically
        Type 3 with h = 0 is just Type 2).

There is no exhaustive taxonomy: from size 6 on, matrices satisfying
MM' = M'M may be none of the three types, so all witnesses are optional
and independent.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from matprime.errors import (
    ContradictionError,
    DimensionMismatch,
    NotIdempotent,
    NoWitness,
)
from matprime.linalg import (
    Mat,
    commutator,
    dot,
    minimal_polynomial,
    outer,
    rank_and_nullspace,
)
from matprime.ratfunc import RF_ZERO, RatFunc
from matprime.wronski import CanonicalDecomposition, canonical_decomposition

Vector = tuple


@dataclass(frozen=True)
class Type2Witness:
    f: Vector
    g: Vector


@dataclass(frozen=True)
class Type3Witness:
    h: RatFunc
    f: Vector
    g: Vector


@dataclass(frozen=True)
class TypeReport:
    """Full classification outcome.  The three witnesses are independent
    (a matrix can carry several types at once); all three absent with
    commutes_c1 true is the legitimate "none of the types" outcome."""

    commutes_c1: bool
    type1: CanonicalDecomposition | None
    type2: Type2Witness | None
    type3: Type3Witness | None
    nonderogatory: bool
    nilpotent: bool
    rank_over_F: int


def commutes_with_derivative(m: Mat) -> bool:
    """Condition (c1): MM' = M'M exactly."""
    return commutator(m, m.derivative()).is_zero()


def derivatives_pairwise_commute(m: Mat, order: int) -> bool:
    """Do M, M', ..., M^(order) pairwise commute?  Finite probe of the
    all-derivatives condition; `is_type1` decides the full condition."""
    if order < 1:
        raise ValueError("order must be >= 1")
    derivs = [m]
    for _ in range(order):
        derivs.append(derivs[-1].derivative())
    for i in range(len(derivs)):
        for j in range(i + 1, len(derivs)):
            if not commutator(derivs[i], derivs[j]).is_zero():
                return False
    return True


def is_type1(m: Mat) -> CanonicalDecomposition | None:
    """The canonical decomposition when its constants pairwise commute,
    else None.  Sound and complete for Type 1 membership."""
    if not m.is_square():
        raise DimensionMismatch("classification needs a square matrix")
    decomp = canonical_decomposition(m)
    cs = decomp.constants
    for i in range(len(cs)):
        for j in range(i + 1, len(cs)):
            if not commutator(cs[i], cs[j]).is_zero():
                return None
    return decomp


def is_type2(m: Mat) -> Type2Witness | None:
    """Witness (f, g) with M = f g^T, f^T g = f^T g' = 0, or None.

    Membership criterion: rank one over Q(t), M^2 = 0 and MM' = M'M
    (rank-one nilpotent solutions of (c1) are exactly the Type 2 matrices).
    The orthogonality identities are consequences, but they are re-checked
    on the constructed witness instead of trusted.
    """
    if not m.is_square():
        raise DimensionMismatch("classification needs a square matrix")
    rank, _ = rank_and_nullspace(m)
    if rank != 1:
        return None
    if not (m * m).is_zero():
        return None
    if not commutes_with_derivative(m):
        return None
    f, g = _rank_one_factors(m)
    if not dot(f, g).is_zero():
        raise ContradictionError("type-2 witness with f^T g != 0")
    g_prime = tuple(x.derivative() for x in g)
    if not dot(f, g_prime).is_zero():
        raise ContradictionError("type-2 witness with f^T g' != 0")
    return Type2Witness(f, g)


def _rank_one_factors(m: Mat) -> tuple[Vector, Vector]:
    """Split a rank-one matrix as f g^T; f is the first nonzero column
    scaled so its first nonzero entry is 1."""
    n = m.n_rows
    col_idx = next(
        j for j in range(m.n_cols) if any(not m[i, j].is_zero() for i in range(n))
    )
    col = list(m.column(col_idx))
    i0 = next(i for i in range(n) if not col[i].is_zero())
    s = col[i0]
    f = tuple(x / s for x in col)
    g = tuple(m[i0, j] for j in range(m.n_cols))
    if outer(f, g) != m:
        raise ContradictionError("rank-one factorization failed")
    return f, g


def is_type3(m: Mat) -> Type3Witness | None:
    """Witness (h, f, g) with M = h I + f g^T and h = trace(M)/n != 0.

    h is forced: a Type 2 matrix is traceless (its trace is f^T g = 0).
    h = 0 cases are reported as Type 2, keeping the two disjoint.
    """
    if not m.is_square():
        raise DimensionMismatch("classification needs a square matrix")
    n = m.n_rows
    h = m.trace() / n
    if h.is_zero():
        return None
    shifted = m - Mat.identity(n).scale(h)
    inner = is_type2(shifted)
    if inner is None:
        return None
    return Type3Witness(h, inner.f, inner.g)


def classify(m: Mat) -> TypeReport:
    """Populate every classification field for a square matrix."""
    if not m.is_square():
        raise DimensionMismatch("classification needs a square matrix")
    mp = minimal_polynomial(m)
    deg = int(mp.degree)
    nilpotent = all(mp.coefficient(k).is_zero() for k in range(deg))
    rank, _ = rank_and_nullspace(m)
    return TypeReport(
        commutes_c1=commutes_with_derivative(m),
        type1=is_type1(m),
        type2=is_type2(m),
        type3=is_type3(m),
        nonderogatory=(deg == m.n_rows),
        nilpotent=nilpotent,
        rank_over_F=rank,
    )


def make_type2(f, seed: int) -> Mat:
    """Construct a Type 2 matrix from a column f: pick g in the nullspace
    of [f, f']^T (deterministically from `seed`) and return f g^T.

    Raises NoWitness when f = 0 or the nullspace is trivial (which can
    only happen for sizes below 3).
    """
    f = tuple(f)
    n = len(f)
    if all(x.is_zero() for x in f):
        raise NoWitness("f must be nonzero")
    f_prime = tuple(x.derivative() for x in f)
    stacked = Mat([list(f), list(f_prime)])
    _, null_basis = rank_and_nullspace(stacked)
    if not null_basis:
        raise NoWitness("[f, f']^T has no nullspace; need size >= 3")
    rng = random.Random(seed)
    g = tuple([RF_ZERO] * n)
    while all(x.is_zero() for x in g):
        weights = [rng.randint(-3, 3) for _ in null_basis]
        g = tuple(
            sum((v[i] * w for v, w in zip(null_basis, weights)), RF_ZERO)
            for i in range(n)
        )
    m = outer(f, g)
    # the construction proves these; check them anyway
    if not dot(f, g).is_zero():
        raise ContradictionError("make_type2: f^T g != 0")
    if not dot(f, tuple(x.derivative() for x in g)).is_zero():
        raise ContradictionError("make_type2: f^T g' != 0")
    if not (m * m).is_zero():
        raise ContradictionError("make_type2: M^2 != 0")
    if not commutes_with_derivative(m):
        raise ContradictionError("make_type2: MM' != M'M")
    return m


def idempotent_constancy_check(n: Mat) -> bool:
    """For idempotent N, report whether N commutes with N'.

    When it does, N must be constant (2NN' = N' together with N^2 = N
    forces N' = 0); that implication is asserted and a failure raises
    ContradictionError, which no input can trigger.
    """
    if not n.is_square() or (n * n) != n:
        raise NotIdempotent("input does not satisfy N^2 = N")
    ok = commutes_with_derivative(n)
    if ok and not n.derivative().is_zero():
        raise ContradictionError("idempotent commuting with N' is not constant")
    return ok
