"""Constant-projector block decomposition and K-diagonalization.

For M with MM' = M'M, split the minimal polynomial into pairwise coprime
monic factors mu_1 ... mu_k, build the partition of unity eps_i out of
Bezout cofactors of p_i = mu/mu_i, and set E_i = eps_i(M).  The E_i are
complete (sum = I), orthogonal, idempotent, and — because each commutes
with its own derivative — constant.  Stacking bases of their ranges gives
a constant invertible T with T^-1 M T block diagonal, each block
annihilated by exactly its mu_i.

Pairwise coprimality is all the construction needs, so the factor split
is squarefree decomposition refined by extraction of roots that lie in
Q(t) itself; no irreducibility certification is attempted.  Root searches
carry an explicit degree bound and a negative result only ever means
"not found within bound".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from matprime import _kernel as K
from matprime.classify import commutes_with_derivative
from matprime.errors import ContradictionError, HypothesisViolated, NotCoprime
from matprime.linalg import (
    Mat,
    PolyF,
    inverse,
    minimal_polynomial,
    polyf_ext_gcd,
    polyf_gcd,
    rref,
)
from matprime.ratfunc import Poly, RatFunc
from matprime.wronski import CanonicalDecomposition, constant_rank, _coordinates_many


@dataclass(frozen=True)
class CoprimeFactorization:
    """Monic pairwise-coprime factors whose product is the input, each a
    power of a squarefree polynomial."""

    factors: tuple[PolyF, ...]

    def product(self) -> PolyF:
        out = PolyF.constant(1)
        for f in self.factors:
            out = out * f
        return out


@dataclass(frozen=True)
class ProjectorSet:
    epsilons: tuple[PolyF, ...]
    projectors: tuple[Mat, ...]


@dataclass(frozen=True)
class BlockDecomposition:
    """transform^-1 * M * transform = diag(blocks), everything exact."""

    transform: Mat
    blocks: tuple[Mat, ...]
    block_min_polys: tuple[PolyF, ...]


def default_degree_bound(m: Mat) -> int:
    """Default root-search bound: matrix size plus largest entry degree."""
    return m.n_rows + m.max_entry_degree()


# -- squarefree / coprime factor split ----------------------------------------


def squarefree_factorization(p: PolyF) -> list[tuple[PolyF, int]]:
    """Yun's algorithm (characteristic 0): monic p = prod s_i^i with the
    s_i squarefree, monic and pairwise coprime.  Returns [(s_i, i)] for
    the s_i of positive degree."""
    out = []
    g = polyf_gcd(p, p.derivative())
    if g.degree <= 0:
        return [(p.monic(), 1)]
    b = p.exact_div(g).monic()
    c = p.derivative().exact_div(g) - b.derivative()
    i = 1
    while b.degree > 0:
        a = polyf_gcd(b, c) if not c.is_zero() else b.monic()
        if a.degree > 0:
            out.append((a.monic(), i))
            b = b.exact_div(a).monic()
            c = c.exact_div(a)
        c = c - b.derivative()
        i += 1
    return out


def coprime_split(mu: PolyF, root_degree_bound: int) -> CoprimeFactorization:
    """Split monic mu into pairwise coprime monic factors: squarefree
    decomposition, then linear factors (x - rho) peeled off for every root
    rho in Q(t) found within the degree bound."""
    if not mu.is_monic() or mu.degree < 1:
        raise ValueError("need a monic polynomial of degree >= 1")
    factors: list[PolyF] = []
    for s, mult in squarefree_factorization(mu):
        roots = find_roots_in_F(s, root_degree_bound)
        rest = s
        for rho in roots:
            rest = rest.exact_div(PolyF.linear(rho))
            factors.append(PolyF.linear(rho) ** mult)
        if rest.degree > 0:
            factors.append(rest.monic() ** mult)
    # sanity: pairwise coprime and exact product
    for i in range(len(factors)):
        for j in range(i + 1, len(factors)):
            if polyf_gcd(factors[i], factors[j]).degree != 0:
                raise ContradictionError("coprime split produced common factors")
    prod = PolyF.constant(1)
    for f in factors:
        prod = prod * f
    if prod != mu:
        raise ContradictionError("coprime split does not multiply back")
    return CoprimeFactorization(tuple(factors))


def partition_of_unity(factors) -> list[PolyF]:
    """eps_i with sum(eps_i) = 1, eps_i = 0 mod mu_j for j != i, built from
    Bezout cofactors of p_i = mu/mu_i against mu_i."""
    factors = list(factors)
    for i in range(len(factors)):
        for j in range(i + 1, len(factors)):
            if polyf_gcd(factors[i], factors[j]).degree != 0:
                raise NotCoprime("factors are not pairwise coprime")
    mu = PolyF.constant(1)
    for f in factors:
        mu = mu * f
    if len(factors) == 1:
        return [PolyF.constant(1)]
    eps = []
    for f in factors:
        p = mu.exact_div(f)
        g, u, _ = polyf_ext_gcd(p, f)
        if g.degree != 0:
            raise NotCoprime("cofactor shares a factor with its complement")
        # g is monic constant 1 after normalization in ext_gcd
        eps.append((u * p) % mu)
    total = PolyF()
    for e in eps:
        total = total + e
    if not total.is_one():
        raise ContradictionError("partition of unity does not sum to 1")
    return eps


# -- projector pipeline --------------------------------------------------------


def _constant_column_space_basis(e: Mat) -> list[tuple]:
    """Columns of a constant matrix spanning its range (pivot columns)."""
    _, pivots = rref(e)
    return [e.column(j) for j in pivots]


def _projector_decomposition(m: Mat, factors) -> tuple[ProjectorSet, BlockDecomposition]:
    """Shared core of block_decompose / k_diagonalize: given the coprime
    factors of the minimal polynomial, build projectors, transform and
    blocks, checking every identity on the way."""
    n = m.n_rows
    eps = partition_of_unity(factors)
    projectors = [e.at_matrix(m) for e in eps]

    total = Mat.zero(n)
    for e in projectors:
        total = total + e
    if total != Mat.identity(n):
        raise ContradictionError("projectors do not sum to the identity")
    for i, ei in enumerate(projectors):
        if (ei * ei) != ei:
            raise ContradictionError("projector is not idempotent")
        for j, ej in enumerate(projectors):
            if i != j and not (ei * ej).is_zero():
                raise ContradictionError("projectors are not orthogonal")
        if not ei.derivative().is_zero():
            raise ContradictionError(
                "projector has a nonzero derivative; hypothesis must have failed"
            )

    bases = [_constant_column_space_basis(e) for e in projectors]
    if sum(len(b) for b in bases) != n:
        raise ContradictionError("projector ranges do not fill the space")
    columns = [col for basis in bases for col in basis]
    transform = Mat.from_columns(columns)
    t_inv = inverse(transform)
    conjugated = t_inv * m * transform

    sizes = [len(b) for b in bases]
    offsets = [sum(sizes[:i]) for i in range(len(sizes))]
    for i in range(n):
        for j in range(n):
            if not conjugated[i, j].is_zero() and not _same_block(i, j, offsets, sizes):
                raise ContradictionError("conjugated matrix is not block diagonal")
    blocks = []
    for off, size in zip(offsets, sizes):
        blocks.append(
            Mat([[conjugated[off + i, off + j] for j in range(size)] for i in range(size)])
        )
    block_mps = []
    for block, factor in zip(blocks, factors):
        if not factor.at_matrix(block).is_zero():
            raise ContradictionError("factor does not annihilate its block")
        if minimal_polynomial(block) != factor.monic():
            raise ContradictionError("factor is not the block's minimal polynomial")
        block_mps.append(factor.monic())
    return (
        ProjectorSet(tuple(eps), tuple(projectors)),
        BlockDecomposition(transform, tuple(blocks), tuple(block_mps)),
    )


def _same_block(i, j, offsets, sizes) -> bool:
    for off, size in zip(offsets, sizes):
        if off <= i < off + size and off <= j < off + size:
            return True
    return False


def block_decompose(
    m: Mat, root_degree_bound: int | None = None
) -> tuple[ProjectorSet, BlockDecomposition]:
    """Full pipeline for a matrix commuting with its derivative.

    Raises HypothesisViolated when MM' != M'M.
    """
    if not m.is_square():
        raise ValueError("need a square matrix")
    if not commutes_with_derivative(m):
        raise HypothesisViolated("matrix does not commute with its derivative")
    if root_degree_bound is None:
        root_degree_bound = default_degree_bound(m)
    mu = minimal_polynomial(m)
    factorization = coprime_split(mu, root_degree_bound)
    return _projector_decomposition(m, factorization.factors)


def k_diagonalize(
    m: Mat, degree_bound: int | None = None
) -> tuple[Mat, list[RatFunc]] | None:
    """Constant diagonalization: returns (T, diagonal entries) with constant
    invertible T and T^-1 M T = diag(...), or None when the minimal
    polynomial is not squarefree or its roots are not all found within the
    degree bound.

    Raises HypothesisViolated when MM' != M'M.
    """
    if not m.is_square():
        raise ValueError("need a square matrix")
    if not commutes_with_derivative(m):
        raise HypothesisViolated("matrix does not commute with its derivative")
    if degree_bound is None:
        degree_bound = default_degree_bound(m)
    mu = minimal_polynomial(m)
    if polyf_gcd(mu, mu.derivative()).degree != 0:
        return None  # repeated factors: not diagonalizable over Q(t) at all
    roots = find_roots_in_F(mu, degree_bound)
    if len(roots) != mu.degree:
        return None  # does not split into linear factors within the bound
    factors = [PolyF.linear(rho) for rho in roots]
    _, block_dec = _projector_decomposition(m, factors)
    diagonal: list[RatFunc] = []
    for block, rho in zip(block_dec.blocks, roots):
        scalar = Mat.identity(block.n_rows).scale(rho)
        if block != scalar:
            raise ContradictionError("linear-factor block is not scalar")
        diagonal.extend([rho] * block.n_rows)
    return block_dec.transform, diagonal


def type1_from_diagonalizable(
    m: Mat, degree_bound: int | None = None
) -> CanonicalDecomposition | None:
    """Explicit Type-1 witness for a K-diagonalizable input: commuting
    constant projectors P_i = T E_ii T^-1 with coefficients the diagonal
    entries, regrouped onto a Q-independent basis of those entries so the
    result is a valid canonical decomposition."""
    diag = k_diagonalize(m, degree_bound)
    if diag is None:
        return None
    transform, entries = diag
    t_inv = inverse(transform)
    n = m.n_rows
    projectors = []
    for i in range(n):
        unit = Mat.zero(n)
        unit_rows = [list(r) for r in unit.rows]
        unit_rows[i][i] = entries[i] * 0 + 1  # RF one with right coercion
        projectors.append(transform * Mat(unit_rows) * t_inv)
    witness = Mat.zero(n)
    for f, p in zip(entries, projectors):
        witness = witness + p.scale(f)
    if witness != m:
        raise ContradictionError("diagonal witness does not reconstruct M")
    # regroup onto a Q-independent basis of the diagonal entries
    report = constant_rank(entries)
    basis = [entries[i] for i in report.basis_indices]
    coords = _coordinates_many(list(entries), basis)
    constants = []
    for j in range(len(basis)):
        c = Mat.zero(n)
        for i in range(n):
            if coords[i][j]:
                c = c + projectors[i].scale(coords[i][j])
        constants.append(c)
    decomp = CanonicalDecomposition(tuple(basis), tuple(constants), (n, n))
    if decomp.reconstruct() != m:
        raise ContradictionError("regrouped witness does not reconstruct M")
    return decomp


# -- roots in Q(t) --------------------------------------------------------------


def find_roots_in_F(p: PolyF, degree_bound: int) -> list[RatFunc]:
    """Every root of p lying in Q(t) with numerator/denominator degree
    within the bound (sound always; complete within the bound).

    Procedure: specialize t at 2*bound+3 integer sample points clear of
    coefficient poles and compute the exact rational roots of each
    specialized polynomial (if any sample has none, p has no root in Q(t)
    at all).  Each rational root at a squarefree base sample is lifted to
    a power-series root of p by exact Newton iteration and reconstructed
    as a bounded-degree rational function (confluent Cauchy interpolation);
    candidates are kept only when p(rho) = 0 holds symbolically.
    """
    if not p.is_monic() or p.degree < 1:
        raise ValueError("need a monic polynomial of degree >= 1")
    if p.degree == 1:
        return [-p.coefficient(0)]
    sf = p.exact_div(polyf_gcd(p, p.derivative())).monic()
    if sf.degree == 1:
        return [-sf.coefficient(0)]

    bound = max(int(degree_bound), 0)
    n_points = 2 * bound + 3
    points = _sample_points(sf, n_points)

    root_sets: dict[int, set[Fraction] | None] = {}
    for x in points:
        root_sets[x] = _rational_roots_at(sf, x)
        if root_sets[x] is not None and not root_sets[x]:
            return []  # a pole-free specialization with no rational root

    base = _pick_base_point(sf, points, root_sets)
    if base is None:
        return []
    base_roots = sorted(root_sets[base])

    order = 2 * bound + 2
    coeff_series = [
        _ratfunc_series(c, base, order) for c in sf.coeffs
    ]
    found: list[RatFunc] = []
    seen = set()
    for r in base_roots:
        series = _newton_lift(coeff_series, r, order)
        if series is None:
            continue
        cand = _rational_reconstruct(series, bound, base)
        if cand is None or cand in seen:
            continue
        if p(cand).is_zero():
            seen.add(cand)
            found.append(cand)
    return sorted(found, key=str)


def _sample_points(p: PolyF, count: int) -> list[int]:
    pts = []
    x = 1
    while len(pts) < count:
        if all(not c.den(x) == 0 for c in p.coeffs):
            pts.append(x)
        x += 1
    return pts


def _rational_roots_at(p: PolyF, x: int) -> set[Fraction] | None:
    """Exact rational roots of the specialization of p at t = x, or None
    when numeric isolation failed (never silently wrong: candidates are
    verified by exact evaluation)."""
    coeffs = [c.eval_at(x) for c in p.coeffs]
    return _rational_roots_q(coeffs)


def _rational_roots_q(coeffs: list[Fraction]) -> set[Fraction] | None:
    """Exact rational roots of a polynomial over Q.

    Clears denominators, strips powers of the variable, reduces to the
    squarefree part over Z, isolates roots at high precision, quantizes by
    the leading coefficient (every rational root lies on the grid Z/lead)
    and keeps exactly the candidates with exact value zero.
    """
    den = 1
    for c in coeffs:
        den = den * c.denominator // _gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    ints = K.trim(ints)
    if not ints:
        raise ValueError("zero polynomial")
    roots: set[Fraction] = set()
    v = 0
    while not ints[v]:
        v += 1
    if v:
        roots.add(Fraction(0))
        ints = ints[v:]
    if len(ints) == 1:
        return roots
    prim, _ = K.primitive(ints)
    g = K.poly_gcd(prim, K.deriv(prim))
    if len(g) > 1:
        prim = K.div_exact(prim, g)
    lead = prim[-1]
    approx = _isolate_roots(prim)
    if approx is None:
        return None
    for z in approx:
        if abs(z.imag) > mpmath.mpf("1e-20") * max(1, abs(z.real)):
            continue
        numer = int(mpmath.nint(z.real * lead))
        cand = Fraction(numer, lead)
        if _eval_int_poly(prim, cand) == 0:
            roots.add(cand)
    return roots


def _isolate_roots(prim):
    with mpmath.workdps(60):
        for maxsteps, extraprec in ((100, 60), (500, 200)):
            try:
                return mpmath.polyroots(
                    list(reversed(prim)), maxsteps=maxsteps, extraprec=extraprec
                )
            except Exception:
                continue
    return None


def _eval_int_poly(c, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for a in reversed(c):
        acc = acc * x + a
    return acc


def _pick_base_point(sf: PolyF, points, root_sets) -> int | None:
    """First sample whose specialization is squarefree over Q (so every
    rational root there is simple and Newton lifting applies); scans past
    the grid if needed — the discriminant only excludes finitely many."""
    candidates = [x for x in points if root_sets.get(x) is not None]
    extra = points[-1]
    tried = 0
    while tried < 20 * len(points):
        if not candidates:
            extra += 1
            if any(c.den(extra) == 0 for c in sf.coeffs):
                continue
            root_set = _rational_roots_at(sf, extra)
            if root_set is not None and not root_set:
                return None
            if root_set is None:
                tried += 1
                continue
            root_sets[extra] = root_set
            candidates = [extra]
        x = candidates.pop(0)
        tried += 1
        coeffs = [c.eval_at(x) for c in sf.coeffs]
        den = 1
        for c in coeffs:
            den = den * c.denominator // _gcd(den, c.denominator)
        ints = K.trim([int(c * den) for c in coeffs])
        prim, _ = K.primitive(ints)
        if len(K.poly_gcd(prim, K.deriv(prim))) == 1:
            return x
    return None


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


# -- exact power series over Q (dense Fraction lists, truncated) ---------------


def _ser_trim(a, order):
    return a[:order] + [Fraction(0)] * max(0, order - len(a))


def _ser_add(a, b):
    return [x + y for x, y in zip(a, b)]


def _ser_sub(a, b):
    return [x - y for x, y in zip(a, b)]


def _ser_mul(a, b, order):
    out = [Fraction(0)] * order
    for i, ai in enumerate(a[:order]):
        if not ai:
            continue
        for j, bj in enumerate(b[: order - i]):
            if bj:
                out[i + j] += ai * bj
    return out


def _ser_inv(a, order):
    if not a[0]:
        raise ZeroDivisionError("series with zero constant term")
    out = [Fraction(0)] * order
    out[0] = 1 / a[0]
    for k in range(1, order):
        acc = Fraction(0)
        for i in range(1, k + 1):
            if i < len(a) and a[i]:
                acc += a[i] * out[k - i]
        out[k] = -acc * out[0]
    return out


def _taylor_shift(coeffs: list[Fraction], c: Fraction) -> list[Fraction]:
    """Coefficients of p(x + c) from those of p(x) (Horner in (x + c))."""
    out: list[Fraction] = []
    for a in reversed(coeffs):
        # out = out * (x + c) + a
        shifted = [Fraction(0)] + out
        for i in range(len(out)):
            shifted[i] += out[i] * c
        if shifted:
            shifted[0] += a
        else:
            shifted = [Fraction(a)]
        out = shifted
    return out if out else [Fraction(0)]


def _ratfunc_series(f: RatFunc, base: int, order: int) -> list[Fraction]:
    """Power series of f around t = base, to the given order."""
    num = _ser_trim(_taylor_shift(list(f.num.coefficients()), Fraction(base)), order)
    den = _ser_trim(_taylor_shift(list(f.den.coefficients()), Fraction(base)), order)
    return _ser_mul(num, _ser_inv(den, order), order)


def _newton_lift(coeff_series, r: Fraction, order: int):
    """Power-series root of sum(coeff_series[k] * y^k) with constant term r,
    by quadratically converging Newton steps; None when r is not a simple
    root of the constant-term polynomial."""
    deg = len(coeff_series) - 1
    d_series = [
        [k * c for c in coeff_series[k]] for k in range(1, deg + 1)
    ]
    rho = [Fraction(r)]
    prec = 1
    dv0 = _horner_series(d_series, rho, 1)[0]
    if dv0 == 0:
        return None
    while prec < order:
        prec = min(2 * prec, order)
        rho = _ser_trim(rho, prec)
        pv = _horner_series(coeff_series, rho, prec)
        dv = _horner_series(d_series, rho, prec)
        rho = _ser_sub(rho, _ser_mul(pv, _ser_inv(dv, prec), prec))
    return rho


def _horner_series(coeff_series, y, order):
    acc = [Fraction(0)] * order
    for c in reversed(coeff_series):
        acc = _ser_add(_ser_mul(acc, y, order), _ser_trim(list(c), order))
    return acc


def _rational_reconstruct(series, bound: int, base: int) -> RatFunc | None:
    """u/v with deg u, deg v <= bound matching the series mod s^(2*bound+2),
    shifted back from s = t - base; None when no such pair exists."""
    width = 2 * bound + 2
    s = _ser_trim(series, width)
    # unknowns: u_0..u_bound, v_0..v_bound; equation k: u_k - sum v_i s_{k-i} = 0
    rows = []
    for k in range(width):
        row = [Fraction(0)] * width
        if k <= bound:
            row[k] = Fraction(1)
        for i in range(min(bound, k) + 1):
            row[bound + 1 + i] = -s[k - i]
        rows.append(row)
    kern = _fraction_kernel(rows)
    if not kern:
        return None
    vec = kern[0]
    u = vec[: bound + 1]
    v = vec[bound + 1 :]
    if all(x == 0 for x in v):
        return None
    u_t = _taylor_shift(u, Fraction(-base))
    v_t = _taylor_shift(v, Fraction(-base))
    try:
        return RatFunc(Poly.from_coeffs(u_t), Poly.from_coeffs(v_t))
    except ZeroDivisionError:
        return None


def _fraction_kernel(rows) -> list[list[Fraction]]:
    """Kernel basis of a matrix over Q (rows of Fractions)."""
    if not rows:
        return []
    width = len(rows[0])
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(width):
        sel = None
        for i in range(r, len(mat)):
            if mat[i][c]:
                sel = i
                break
        if sel is None:
            continue
        mat[r], mat[sel] = mat[sel], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    pivot_set = set(pivots)
    free = [c for c in range(width) if c not in pivot_set]
    basis = []
    for jf in free:
        v = [Fraction(0)] * width
        v[jf] = Fraction(1)
        for row_idx, jp in enumerate(pivots):
            v[jp] = -mat[row_idx][jf]
        basis.append(v)
    return basis
