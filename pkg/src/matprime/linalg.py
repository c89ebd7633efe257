"""Exact dense linear algebra over Q(t) and polynomials over Q(t)[x].

Everything here is exact field arithmetic: elimination uses the first
nonzero entry in row order as pivot (reproducible runs; over an exact
field the answer is pivot-independent), the minimal polynomial comes
from the first linear dependence among matrix powers, and the
characteristic polynomial from the Faddeev-LeVerrier recursion, which
only ever divides by integers.
"""

from __future__ import annotations

from matprime.errors import DimensionMismatch, DivisionByZero
from matprime.ratfunc import RF_ONE, RF_ZERO, RatFunc

Vector = tuple  # column vector = tuple of RatFunc


class Mat:
    """Immutable dense matrix over Q(t)."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(_as_rf(x) for x in row) for row in rows)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise DimensionMismatch("ragged row lengths")
            if width == 0:
                raise DimensionMismatch("empty rows")
        self.rows = rows

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls(
            [[RF_ONE if i == j else RF_ZERO for j in range(n)] for i in range(n)]
        )

    @classmethod
    def zero(cls, n: int, m: int | None = None) -> "Mat":
        m = n if m is None else m
        return cls([[RF_ZERO] * m for _ in range(n)])

    @classmethod
    def diag(cls, entries) -> "Mat":
        entries = [_as_rf(e) for e in entries]
        n = len(entries)
        return cls(
            [[entries[i] if i == j else RF_ZERO for j in range(n)] for i in range(n)]
        )

    @classmethod
    def block_diag(cls, blocks) -> "Mat":
        blocks = list(blocks)
        n = sum(b.n_rows for b in blocks)
        out = [[RF_ZERO] * n for _ in range(n)]
        at = 0
        for b in blocks:
            for i in range(b.n_rows):
                for j in range(b.n_cols):
                    out[at + i][at + j] = b.rows[i][j]
            at += b.n_rows
        return cls(out)

    @classmethod
    def from_columns(cls, cols) -> "Mat":
        cols = [tuple(c) for c in cols]
        return cls(
            [[cols[j][i] for j in range(len(cols))] for i in range(len(cols[0]))]
        )

    # -- shape ----------------------------------------------------------

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_cols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def is_square(self) -> bool:
        return self.n_rows == self.n_cols

    def __getitem__(self, key):
        i, j = key
        return self.rows[i][j]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.rows)

    def entries(self):
        """All entries, row-major."""
        return [x for row in self.rows for x in row]

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "Mat") -> "Mat":
        self._need_same_shape(other)
        return Mat(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def __sub__(self, other: "Mat") -> "Mat":
        self._need_same_shape(other)
        return Mat(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def __neg__(self) -> "Mat":
        return Mat([[-a for a in row] for row in self.rows])

    def __mul__(self, other):
        if isinstance(other, Mat):
            if self.n_cols != other.n_rows:
                raise DimensionMismatch(
                    f"{self.n_rows}x{self.n_cols} @ {other.n_rows}x{other.n_cols}"
                )
            cols = [other.column(j) for j in range(other.n_cols)]
            return Mat(
                [[_dot(row, col) for col in cols] for row in self.rows]
            )
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, f) -> "Mat":
        f = _as_rf(f)
        return Mat([[f * a for a in row] for row in self.rows])

    def __pow__(self, n: int) -> "Mat":
        if not self.is_square():
            raise DimensionMismatch("power of a non-square matrix")
        if n < 0:
            raise ValueError("negative matrix power")
        out = Mat.identity(self.n_rows)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def transpose(self) -> "Mat":
        return Mat(list(zip(*self.rows)))

    def derivative(self) -> "Mat":
        """Entrywise derivative M'."""
        return Mat([[a.derivative() for a in row] for row in self.rows])

    def trace(self) -> RatFunc:
        if not self.is_square():
            raise DimensionMismatch("trace of a non-square matrix")
        out = RF_ZERO
        for i in range(self.n_rows):
            out = out + self.rows[i][i]
        return out

    def is_zero(self) -> bool:
        return all(a.is_zero() for row in self.rows for a in row)

    def is_constant(self) -> bool:
        return all(a.is_constant() for row in self.rows for a in row)

    def max_entry_degree(self) -> int:
        return max(a.max_degree() for row in self.rows for a in row)

    def _need_same_shape(self, other):
        if self.n_rows != other.n_rows or self.n_cols != other.n_cols:
            raise DimensionMismatch(
                f"{self.n_rows}x{self.n_cols} vs {other.n_rows}x{other.n_cols}"
            )

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __str__(self):
        return "[" + "; ".join(", ".join(str(a) for a in row) for row in self.rows) + "]"

    def __repr__(self):
        return f"Mat({self})"


def _as_rf(x):
    if isinstance(x, RatFunc):
        return x
    return RF_ZERO + x  # coerces ints / Fractions / Poly


def _dot(u, v) -> RatFunc:
    acc = RF_ZERO
    for a, b in zip(u, v):
        if not (a.is_zero() or b.is_zero()):
            acc = acc + a * b
    return acc


def dot(u, v) -> RatFunc:
    if len(u) != len(v):
        raise DimensionMismatch("dot of different lengths")
    return _dot(u, v)


def outer(u, v) -> Mat:
    """Column u times row v: the rank-<=1 matrix u v^T."""
    return Mat([[a * b for b in v] for a in u])


def commutator(a: Mat, b: Mat) -> Mat:
    """AB - BA."""
    if not (a.is_square() and b.is_square()) or a.n_rows != b.n_rows:
        raise DimensionMismatch("commutator needs square matrices of equal size")
    return a * b - b * a


# -- elimination -------------------------------------------------------------


def rref(m: Mat) -> tuple[Mat, list[int]]:
    """Reduced row echelon form; pivot = first nonzero entry in row order.

    Returns (R, pivot_columns).
    """
    rows = [list(r) for r in m.rows]
    n_rows, n_cols = len(rows), len(rows[0])
    pivots = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        sel = None
        for i in range(r, n_rows):
            if not rows[i][c].is_zero():
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(n_rows):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return Mat(rows), pivots


def rank_and_nullspace(m: Mat) -> tuple[int, list[Vector]]:
    """Rank over Q(t) and a basis of the right nullspace.

    rank + len(basis) == n_cols, and m*v == 0 exactly for every basis vector.
    """
    reduced, pivots = rref(m)
    rank = len(pivots)
    pivot_set = set(pivots)
    free = [j for j in range(m.n_cols) if j not in pivot_set]
    basis = []
    for jf in free:
        v = [RF_ZERO] * m.n_cols
        v[jf] = RF_ONE
        for r, jp in enumerate(pivots):
            v[jp] = -reduced.rows[r][jf]
        basis.append(tuple(v))
    return rank, basis


def rank(m: Mat) -> int:
    return rank_and_nullspace(m)[0]


def det(m: Mat) -> RatFunc:
    """Determinant by forward elimination with exact division."""
    if not m.is_square():
        raise DimensionMismatch("determinant of a non-square matrix")
    rows = [list(r) for r in m.rows]
    n = len(rows)
    sign = 1
    out = RF_ONE
    for c in range(n):
        sel = None
        for i in range(c, n):
            if not rows[i][c].is_zero():
                sel = i
                break
        if sel is None:
            return RF_ZERO
        if sel != c:
            rows[c], rows[sel] = rows[sel], rows[c]
            sign = -sign
        piv = rows[c][c]
        out = out * piv
        inv = piv.inverse()
        for i in range(c + 1, n):
            if not rows[i][c].is_zero():
                f = rows[i][c] * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return out if sign == 1 else -out


def inverse(m: Mat) -> Mat:
    """Exact inverse; raises DivisionByZero for singular input."""
    if not m.is_square():
        raise DimensionMismatch("inverse of a non-square matrix")
    n = m.n_rows
    aug = Mat([list(m.rows[i]) + list(Mat.identity(n).rows[i]) for i in range(n)])
    reduced, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise DivisionByZero("matrix is singular")
    return Mat([row[n:] for row in reduced.rows])


def solve(a: Mat, rhs_columns) -> list[Vector] | None:
    """Solve a*x = b for each column b in rhs_columns (one elimination pass).

    Returns one solution per column (free variables set to zero), or None
    if any system is inconsistent.
    """
    rhs_columns = [tuple(c) for c in rhs_columns]
    n, k = a.n_cols, len(rhs_columns)
    aug = Mat(
        [
            list(a.rows[i]) + [col[i] for col in rhs_columns]
            for i in range(a.n_rows)
        ]
    )
    reduced, pivots = rref(aug)
    sys_pivots = [p for p in pivots if p < n]
    if len(sys_pivots) != len(pivots):
        return None  # a pivot in the rhs block: inconsistent
    outs = []
    for idx in range(k):
        x = [RF_ZERO] * n
        for r, jp in enumerate(sys_pivots):
            x[jp] = reduced.rows[r][n + idx]
        outs.append(tuple(x))
    return outs


# -- polynomials over Q(t) ----------------------------------------------------


class PolyF:
    """Dense polynomial in one variable over Q(t) (the eigenvalue variable,
    printed as 'x').  Coefficient index = power."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        coeffs = [_as_rf(c) for c in coeffs]
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @classmethod
    def constant(cls, c) -> "PolyF":
        return cls([c])

    @classmethod
    def variable(cls) -> "PolyF":
        return cls([RF_ZERO, RF_ONE])

    @classmethod
    def linear(cls, root) -> "PolyF":
        """x - root."""
        return cls([-_as_rf(root), RF_ONE])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0].is_one()

    def coefficient(self, k: int) -> RatFunc:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return RF_ZERO

    @property
    def leading(self) -> RatFunc:
        return self.coeffs[-1] if self.coeffs else RF_ZERO

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1].is_one()

    def monic(self) -> "PolyF":
        if self.is_zero():
            raise ValueError("no monic form of the zero polynomial")
        inv = self.coeffs[-1].inverse()
        return PolyF([c * inv for c in self.coeffs])

    def __add__(self, other):
        other = _as_polyf(other)
        a, b = list(self.coeffs), list(other.coeffs)
        if len(a) < len(b):
            a, b = b, a
        for i, c in enumerate(b):
            a[i] = a[i] + c
        return PolyF(a)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_polyf(other)
        return self + (-other)

    def __rsub__(self, other):
        return _as_polyf(other) - self

    def __neg__(self):
        return PolyF([-c for c in self.coeffs])

    def __mul__(self, other):
        other = _as_polyf(other)
        if self.is_zero() or other.is_zero():
            return PolyF()
        out = [RF_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return PolyF(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "PolyF":
        if n < 0:
            raise ValueError("negative power")
        out = PolyF.constant(RF_ONE)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other):
        other = _as_polyf(other)
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        q = [RF_ZERO] * max(len(self.coeffs) - len(other.coeffs) + 1, 1)
        r = list(self.coeffs)
        db = other.degree
        inv_lead = other.coeffs[-1].inverse()
        while len(r) - 1 >= db and r:
            k = len(r) - 1 - db
            c = r[-1] * inv_lead
            q[k] = c
            for i in range(db + 1):
                r[k + i] = r[k + i] - c * other.coeffs[i]
            while r and r[-1].is_zero():
                r.pop()
        return PolyF(q), PolyF(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "PolyF") -> "PolyF":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError("inexact polynomial division")
        return q

    def derivative(self) -> "PolyF":
        """Derivative with respect to the polynomial variable (not t)."""
        return PolyF([i * self.coeffs[i] for i in range(1, len(self.coeffs))])

    def __call__(self, value: RatFunc) -> RatFunc:
        acc = RF_ZERO
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def at_matrix(self, m: Mat) -> Mat:
        """Horner evaluation at a square matrix."""
        if not m.is_square():
            raise DimensionMismatch("polynomial at a non-square matrix")
        n = m.n_rows
        acc = Mat.zero(n)
        ident = Mat.identity(n)
        for c in reversed(self.coeffs):
            acc = acc * m + ident.scale(c)
        return acc

    def __eq__(self, other):
        if not isinstance(other, (PolyF, RatFunc, int)):
            return NotImplemented
        return self.coeffs == _as_polyf(other).coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            if k == 0:
                parts.append(_coeff_str(c))
            elif c.is_one():
                parts.append(_pow_str(k))
            else:
                parts.append(f"{_coeff_str(c)}*{_pow_str(k)}")
        return " + ".join(parts)

    def __repr__(self):
        return f"PolyF({self})"


def _pow_str(k: int) -> str:
    return "x" if k == 1 else f"x^{k}"


def _coeff_str(c: RatFunc) -> str:
    s = str(c)
    if any(op in s for op in "+-*/") and not (s.startswith("-") and s[1:].isdigit()):
        return f"({s})"
    return s


def _as_polyf(x):
    if isinstance(x, PolyF):
        return x
    return PolyF([x])


def polyf_gcd(a: PolyF, b: PolyF) -> PolyF:
    """Monic gcd in Q(t)[x]."""
    while not b.is_zero():
        a, b = b, a % b
    if a.is_zero():
        return a
    return a.monic()


def polyf_ext_gcd(a: PolyF, b: PolyF) -> tuple[PolyF, PolyF, PolyF]:
    """Extended Euclid: returns monic g and u, v with u*a + v*b = g."""
    if a.is_zero() and b.is_zero():
        raise ValueError("ext_gcd(0, 0)")
    r0, r1 = a, b
    u0, u1 = PolyF.constant(RF_ONE), PolyF()
    v0, v1 = PolyF(), PolyF.constant(RF_ONE)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    lead = r0.coeffs[-1].inverse()
    return r0 * lead, u0 * lead, v0 * lead


# -- minimal / characteristic polynomials -------------------------------------


def minimal_polynomial(m: Mat) -> PolyF:
    """Monic least-degree annihilator, via the first linear dependence among
    I, M, M^2, ... (each power flattened to an n^2-vector over Q(t))."""
    if not m.is_square():
        raise DimensionMismatch("minimal polynomial of a non-square matrix")
    n = m.n_rows
    width = n + 1  # Cayley-Hamilton: dependence occurs by power n
    power = Mat.identity(n)
    # echelon rows: (reduced n^2-vector with leading 1, its power coordinates);
    # invariant: vec == sum(coords[i] * flatten(M^i))
    echelon: list[tuple[list[RatFunc], int, list[RatFunc]]] = []
    for k in range(width):
        vec = [x for row in power.rows for x in row]
        coords = [RF_ZERO] * width
        coords[k] = RF_ONE
        for evec, lead, ecoords in echelon:
            f = vec[lead]
            if not f.is_zero():
                vec = [x - f * y for x, y in zip(vec, evec)]
                coords = [c - f * e for c, e in zip(coords, ecoords)]
        if all(x.is_zero() for x in vec):
            # sum(coords[i] M^i) = 0 with coords[k] = 1: that is the minimal poly
            return PolyF(coords[: k + 1])
        lead = _first_nonzero(vec)
        inv = vec[lead].inverse()
        vec = [x * inv for x in vec]
        coords = [c * inv for c in coords]
        echelon.append((vec, lead, coords))
        power = power * m
    raise AssertionError("no dependence among the first n+1 powers")


def _first_nonzero(vec) -> int:
    for i, x in enumerate(vec):
        if not x.is_zero():
            return i
    raise ValueError("zero vector")


def char_polynomial(m: Mat) -> PolyF:
    """det(xI - M), monic of degree n, by the Faddeev-LeVerrier recursion
    (exact over Q(t): the only divisions are by integers)."""
    if not m.is_square():
        raise DimensionMismatch("characteristic polynomial of a non-square matrix")
    n = m.n_rows
    coeffs = [RF_ZERO] * (n + 1)
    coeffs[n] = RF_ONE
    b = Mat.identity(n)
    for k in range(1, n + 1):
        a = m * b
        c = -(a.trace() / k)
        coeffs[n - k] = c
        b = a + Mat.identity(n).scale(c)
    return PolyF(coeffs)


def is_nonderogatory(m: Mat) -> bool:
    """True iff the minimal polynomial has full degree n (equals the
    characteristic polynomial)."""
    return minimal_polynomial(m).degree == m.n_rows
