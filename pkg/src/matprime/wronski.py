"""Constant-linear-independence via Wronski matrices, and the canonical
expansion M = f_1 C_1 + ... + f_r C_r with constant coefficient matrices.

A family of rational functions is linearly dependent over the constants Q
exactly when the columns of its Wronski matrix (successive derivatives,
row i = i-th derivative) are dependent over Q(t).  The operational
direction used everywhere is "square Wronskian nonzero => independent over
Q", plus an exact linear solve to express further functions in a certified
basis; no antiderivatives are ever needed.
"""

from __future__ import annotations

from dataclasses import dataclass

from matprime.errors import NotInSpan
from matprime.linalg import Mat, det, solve
from matprime.ratfunc import RF_ONE, RF_ZERO, Rational, RatFunc


@dataclass(frozen=True)
class IndependenceReport:
    """Outcome of a constant-rank scan.

    basis functions (at `basis_indices` into the scanned family) have a
    nonzero Wronski determinant, kept as `certificate`; every non-basis
    member is a Q-combination of the basis.
    """

    rank_over_K: int
    basis_indices: tuple[int, ...]
    certificate: Mat


@dataclass(frozen=True)
class CanonicalDecomposition:
    """M = sum(basis[i] * constants[i]) with a Q-independent basis and
    every entry of every constants[i] in Q.  `shape` keeps the matrix
    dimensions so the zero matrix (empty sum) stays reconstructible."""

    basis: tuple[RatFunc, ...]
    constants: tuple[Mat, ...]
    shape: tuple[int, int]

    def reconstruct(self) -> Mat:
        out = Mat.zero(*self.shape)
        for f, c in zip(self.basis, self.constants):
            out = out + c.scale(f)
        return out

    @property
    def rank_over_K(self) -> int:
        return len(self.basis)


def wronski_matrix(fs, rows: int) -> Mat:
    """Matrix Y with Y[i][j] = j-th input differentiated i times."""
    if rows < 1:
        raise ValueError("need at least one row")
    fs = [f for f in fs]
    out = []
    current = list(fs)
    for i in range(rows):
        if i:
            current = [f.derivative() for f in current]
        out.append(list(current))
    return Mat(out)


def constant_rank(fs) -> IndependenceReport:
    """Greedy basis scan in input order: a candidate joins the basis iff the
    square Wronskian of basis + candidate is nonzero (sound and complete for
    differential fields)."""
    fs = list(fs)
    basis_idx: list[int] = []
    basis: list[RatFunc] = []
    certificate = None
    for i, f in enumerate(fs):
        if f.is_zero():
            continue
        cand = basis + [f]
        w = wronski_matrix(cand, len(cand))
        if not det(w).is_zero():
            basis_idx.append(i)
            basis.append(f)
            certificate = w
    if certificate is None:
        certificate = Mat([[RF_ZERO]])  # all inputs zero: rank 0
    return IndependenceReport(len(basis_idx), tuple(basis_idx), certificate)


def constant_coordinates(f: RatFunc, basis) -> list[Rational]:
    """Coordinates of f over a Q-independent basis, from the exact solve of
    the Wronski system W c = (f, f', ..., f^(r-1)); raises NotInSpan if the
    system is inconsistent or any coordinate fails to be constant."""
    coords = _coordinates_many([f], list(basis))
    return coords[0]


def _coordinates_many(targets, basis) -> list[list[Rational]]:
    """Shared-elimination version: coordinates for many targets at once."""
    r = len(basis)
    if r == 0:
        for f in targets:
            if not f.is_zero():
                raise NotInSpan(f"{f} is not in the span of an empty basis")
        return [[] for _ in targets]
    w = wronski_matrix(basis, r)
    rhs = []
    for f in targets:
        col = [f]
        for _ in range(r - 1):
            col.append(col[-1].derivative())
        rhs.append(col)
    sols = solve(w, rhs)
    if sols is None:
        raise NotInSpan("Wronski system is inconsistent")
    out = []
    for f, sol in zip(targets, sols):
        coords = []
        for c in sol:
            if not c.is_constant():
                raise NotInSpan(f"{f}: coordinate {c} is not constant")
            coords.append(c.constant_value())
        # row 0 of the Wronski system is exactly f = sum c_i basis_i, so a
        # constant solution is already the witness; keep a cheap guard
        recon = RF_ZERO
        for c, b in zip(coords, basis):
            recon = recon + b * c
        if recon != f:
            raise NotInSpan(f"{f} is not a constant combination of the basis")
        out.append(coords)
    return out


def canonical_decomposition(m: Mat) -> CanonicalDecomposition:
    """Entrywise constant-basis expansion of a square matrix.

    Scans the n^2 entries row-major with `constant_rank`, then solves for
    the Q-coordinates of every entry; C_i[a][b] is the coordinate of entry
    (a, b) on basis element i.  Reconstruction is exact by construction.
    """
    entries = m.entries()
    report = constant_rank(entries)
    basis = [entries[i] for i in report.basis_indices]
    all_coords = _coordinates_many(entries, basis)
    n, cols = m.n_rows, m.n_cols
    constants = []
    for i in range(report.rank_over_K):
        c = [
            [RF_ZERO + all_coords[a * cols + b][i] for b in range(cols)]
            for a in range(n)
        ]
        constants.append(Mat(c))
    return CanonicalDecomposition(tuple(basis), tuple(constants), (n, cols))
