"""The differential field Q(t): exact rational-function arithmetic.

`Poly` is a dense univariate polynomial over Q, stored as a primitive
integer coefficient vector plus one positive integer denominator, so the
hot operations run on plain int lists (see `matprime._kernel`).  `RatFunc`
is a reduced fraction of two `Poly` with a monic denominator; that
canonical form makes equality representational, which is what lets "is
the derivative zero" be decided exactly.

The derivative is d/dt.  The constant subfield is exactly Q: a value is
constant iff its derivative is zero iff it reduces to p/1 with deg p <= 0.
`Rational` is an alias of `fractions.Fraction` (same invariants the rest
of the package needs: reduced, positive denominator, arbitrary precision).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd

from matprime import _kernel as K
from matprime.errors import DivisionByZero, PoleAtPoint, ZeroDenominator

Rational = Fraction

NEG_INF = float("-inf")


def _lcm(a: int, b: int) -> int:
    return a // _int_gcd(a, b) * b


class Poly:
    """Polynomial in t over Q, canonical form.

    Internally ``sum(c[k]/d * t^k)`` with ``c`` a trimmed int tuple,
    ``d >= 1`` and ``gcd(content(c), d) == 1``.  Immutable.
    """

    __slots__ = ("_c", "_d")

    def __init__(self, coeffs=(), _den: int = 1, _raw: bool = False):
        if _raw:
            self._c = tuple(coeffs)
            self._d = _den
            return
        c, d = _normalize_int_poly(list(coeffs), _den)
        self._c = tuple(c)
        self._d = d

    @classmethod
    def _make(cls, c, d) -> "Poly":
        c, d = _normalize_int_poly(c, d)
        return cls(c, d, _raw=True)

    @classmethod
    def from_coeffs(cls, coeffs) -> "Poly":
        """Build from a sequence of ints / Fractions, index = power of t."""
        den = 1
        fracs = [Fraction(x) for x in coeffs]
        for f in fracs:
            den = _lcm(den, f.denominator)
        ints = [int(f * den) for f in fracs]
        return cls._make(ints, den)

    @classmethod
    def constant(cls, value) -> "Poly":
        f = Fraction(value)
        return cls._make([f.numerator], f.denominator)

    # -- inspection ---------------------------------------------------

    @property
    def degree(self):
        """Degree; float('-inf') for the zero polynomial."""
        return len(self._c) - 1 if self._c else NEG_INF

    def is_zero(self) -> bool:
        return not self._c

    def is_one(self) -> bool:
        return self._c == (1,) and self._d == 1

    def is_constant(self) -> bool:
        return len(self._c) <= 1

    def coefficient(self, k: int) -> Fraction:
        if 0 <= k < len(self._c):
            return Fraction(self._c[k], self._d)
        return Fraction(0)

    def coefficients(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._d) for c in self._c)

    @property
    def leading(self) -> Fraction:
        return Fraction(self._c[-1], self._d) if self._c else Fraction(0)

    def is_monic(self) -> bool:
        return bool(self._c) and self._c[-1] == self._d

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return other
        a, b = self, other
        # cross-multiply onto the lcm denominator
        d = _lcm(a._d, b._d)
        ac = K.scale(list(a._c), d // a._d)
        bc = K.scale(list(b._c), d // b._d)
        return Poly._make(K.add(ac, bc), d)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return Poly(tuple(-x for x in self._c), self._d, _raw=True)

    def __mul__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return other
        return Poly._make(K.mul(list(self._c), list(other._c)), self._d * other._d)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly.constant(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other):
        """Exact division with remainder over Q."""
        other = _coerce_poly(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        q, r = K.pseudo_divmod(list(self._c), list(other._c))
        # lc(b)^s * a = q*b + r over Z; rescale to a = (q'/..)b + r'
        s = max(len(self._c) - len(other._c) + 1, 0)
        m = other._c[-1] ** s
        quo = Poly._make(K.scale(q, other._d), m * self._d)
        rem = Poly._make(r, m * self._d)
        return quo, rem

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        """Quotient self/other, which must be exact."""
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError("inexact polynomial division")
        return q

    def derivative(self) -> "Poly":
        return Poly._make(K.deriv(list(self._c)), self._d)

    def monic(self) -> "Poly":
        if self.is_zero():
            raise ValueError("no monic form of the zero polynomial")
        return Poly._make(K.scale(list(self._c), self._d), self._d * self._c[-1])

    @staticmethod
    def gcd(a: "Poly", b: "Poly") -> "Poly":
        """gcd in Q[t], returned with primitive integer coefficients and a
        positive leading coefficient (so gcd(2t+2, 4) == 1, not 2)."""
        g = K.poly_gcd(list(a._c), list(b._c))
        return Poly(g, 1, _raw=True)

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self._c):
            acc = acc * x + c
        return acc / self._d

    # -- plumbing -----------------------------------------------------

    def __eq__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return other
        return self._c == other._c and self._d == other._d

    def __hash__(self):
        return hash((self._c, self._d))

    def __bool__(self):
        return bool(self._c)

    def __str__(self):
        return format_poly(self._c, self._d)

    def __repr__(self):
        return f"Poly({self})"


def _normalize_int_poly(c, d):
    """Canonicalize an int coefficient list + denominator pair."""
    if d == 0:
        raise ZeroDenominator("polynomial with zero denominator")
    c = K.trim(c)
    if not c:
        return [], 1
    if d < 0:
        c = K.neg(c)
        d = -d
    g = _int_gcd(K.content(c), d)
    if g > 1:
        c = [x // g for x in c]
        d //= g
    return c, d


def _coerce_poly(x):
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly.constant(x)
    return NotImplemented


POLY_ZERO = Poly()
POLY_ONE = Poly.constant(1)
POLY_T = Poly((0, 1), 1, _raw=True)


def format_poly(c, d, var: str = "t") -> str:
    """Render an int-list polynomial as a string the expression grammar
    parses back to the same value.  Coefficients are emitted as c or c/d
    factors, so operator precedence never needs parentheses."""
    if not c:
        return "0"
    parts = []
    for k in range(len(c) - 1, -1, -1):
        a = c[k]
        if not a:
            continue
        mag = _format_monomial(abs(a), d, k, var)
        if not parts:
            parts.append(mag if a > 0 else _format_leading_negative(abs(a), d, k, var))
        else:
            parts.append(f" + {mag}" if a > 0 else f" - {mag}")
    return "".join(parts)


def _format_monomial(a, d, k, var):
    # a > 0
    if k == 0:
        return str(a) if d == 1 else f"{a}/{d}"
    pow_s = var if k == 1 else f"{var}^{k}"
    if a == 1 and d == 1:
        return pow_s
    if d == 1:
        return f"{a}*{pow_s}"
    return f"{a}/{d}*{pow_s}"


def _format_leading_negative(a, d, k, var):
    # leading term with a negative coefficient: never emit a bare "-t^k",
    # since the grammar binds '^' after unary minus ("-t^2" means (-t)^2)
    if k == 0:
        return f"-{a}" if d == 1 else f"-{a}/{d}"
    pow_s = var if k == 1 else f"{var}^{k}"
    if d == 1:
        return f"-{a}*{pow_s}"
    return f"-{a}/{d}*{pow_s}"


class RatFunc:
    """Element of Q(t) in canonical form: num/den reduced, den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num=POLY_ZERO, den=POLY_ONE, _raw: bool = False):
        if _raw:
            self.num = num
            self.den = den
            return
        f = RatFunc.from_polys(_as_poly(num), _as_poly(den))
        self.num = f.num
        self.den = f.den

    @classmethod
    def from_polys(cls, num: Poly, den: Poly) -> "RatFunc":
        """Canonical form of num/den (the normalization everything funnels
        through): cancel the gcd, then scale the denominator monic."""
        if den.is_zero():
            raise ZeroDenominator("rational function with zero denominator")
        if num.is_zero():
            return RF_ZERO
        g = K.poly_gcd(list(num._c), list(den._c))
        nc, dc = list(num._c), list(den._c)
        if len(g) > 1:
            nc = K.div_exact(nc, g)
            dc = K.div_exact(dc, g)
        # divide both by the denominator's leading coefficient dc[-1]/dd
        nd, dd = num._d, den._d
        new_num = Poly._make(K.scale(nc, dd), nd * dc[-1])
        new_den = Poly._make(dc, dc[-1])
        return cls(new_num, new_den, _raw=True)

    @classmethod
    def from_const(cls, value) -> "RatFunc":
        return cls(Poly.constant(value), POLY_ONE, _raw=True)

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFunc":
        return cls(p, POLY_ONE, _raw=True)

    # -- inspection ---------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_constant(self) -> bool:
        """True iff the value lies in the constant subfield Q,
        equivalently iff the derivative is zero."""
        return self.den.is_one() and self.num.is_constant()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.num.coefficient(0)

    def max_degree(self) -> int:
        """max(deg num, deg den); 0 for the zero function."""
        if self.is_zero():
            return 0
        return int(max(self.num.degree, self.den.degree))

    # -- field arithmetic ---------------------------------------------

    def __add__(self, other):
        other = _coerce_ratfunc(other)
        if other is NotImplemented:
            return other
        return RatFunc.from_polys(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_ratfunc(other)
        if other is NotImplemented:
            return other
        return RatFunc.from_polys(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __rsub__(self, other):
        other = _coerce_ratfunc(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return RatFunc(-self.num, self.den, _raw=True)

    def __mul__(self, other):
        other = _coerce_ratfunc(other)
        if other is NotImplemented:
            return other
        return RatFunc.from_polys(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_ratfunc(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return RatFunc.from_polys(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _coerce_ratfunc(other)
        if other is NotImplemented:
            return other
        return other / self

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise DivisionByZero("inverse of the zero rational function")
        return RatFunc.from_polys(self.den, self.num)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = RF_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- the derivation ------------------------------------------------

    def derivative(self) -> "RatFunc":
        """Quotient rule; satisfies (a+b)' = a'+b' and (ab)' = a'b+ab' exactly."""
        if self.den.is_one():
            return RatFunc.from_polys(self.num.derivative(), POLY_ONE)
        return RatFunc.from_polys(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def derivatives(self, order: int):
        """[self, self', ..., self^(order)]."""
        out = [self]
        for _ in range(order):
            out.append(out[-1].derivative())
        return out

    # -- evaluation ----------------------------------------------------

    def eval_at(self, t0) -> Fraction:
        t0 = Fraction(t0)
        dv = self.den(t0)
        if dv == 0:
            raise PoleAtPoint(f"pole at t = {t0}")
        return self.num(t0) / dv

    # -- plumbing -------------------------------------------------------

    def __eq__(self, other):
        other = _coerce_ratfunc(other)
        if other is NotImplemented:
            return other
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        return self.to_expr()

    def __repr__(self):
        return f"RatFunc({self.to_expr()})"

    def to_expr(self) -> str:
        """Serialize to a string the expression grammar parses back to the
        identical canonical value."""
        num_s = str(self.num)
        if self.den.is_one():
            return num_s
        den_s = str(self.den)
        if _term_count(self.num) > 1:
            num_s = f"({num_s})"
        # den is monic; a single-term monic denominator is a plain power of t
        if _term_count(self.den) > 1:
            den_s = f"({den_s})"
        return f"{num_s}/{den_s}"


def _term_count(p: Poly) -> int:
    return sum(1 for x in p._c if x)


def _as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly.constant(x)
    raise TypeError(f"cannot interpret {x!r} as a polynomial")


def _coerce_ratfunc(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, Fraction)):
        return RatFunc.from_const(x)
    if isinstance(x, Poly):
        return RatFunc.from_poly(x)
    return NotImplemented


RF_ZERO = RatFunc.__new__(RatFunc)
RF_ZERO.num = POLY_ZERO
RF_ZERO.den = POLY_ONE
RF_ONE = RatFunc(POLY_ONE, POLY_ONE, _raw=True)
T = RatFunc(POLY_T, POLY_ONE, _raw=True)
