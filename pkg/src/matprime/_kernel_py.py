"""Pure-Python kernels for dense integer-coefficient polynomial arithmetic.

A polynomial is a list of Python ints, little-endian: [a0, a1, ..., an]
stands for a0 + a1*t + ... + an*t^n, with no trailing zeros ([] is the
zero polynomial).  Coefficients are arbitrary precision; every routine
here is exact.  `matprime._kernel_cy` is a compiled twin of this module
with the identical surface; see `matprime._kernel` for the selection.
"""

from math import gcd as _int_gcd

BACKEND = "python"


def trim(c):
    """Drop trailing zero coefficients (returns a new list)."""
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return list(c[:n])


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i in range(len(b)):
        out[i] += b[i]
    return trim(out)


def sub(a, b):
    out = list(a)
    if len(b) > len(out):
        out.extend([0] * (len(b) - len(out)))
    for i in range(len(b)):
        out[i] -= b[i]
    return trim(out)


def neg(a):
    return [-x for x in a]


def scale(a, k):
    if not k:
        return []
    return [x * k for x in a]


def mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def deriv(a):
    """d/dt of the polynomial."""
    return [i * a[i] for i in range(1, len(a))]


def content(a):
    """gcd of the coefficients, >= 0 (0 for the zero polynomial)."""
    g = 0
    for x in a:
        g = _int_gcd(g, x)
        if g == 1:
            return 1
    return g


def primitive(a):
    """Split off the content: returns (prim, cont) with a == scale(prim, cont),
    prim having a positive leading coefficient.  ([], 0) for zero."""
    a = trim(a)
    if not a:
        return [], 0
    c = content(a)
    if a[-1] < 0:
        c = -c
    if c == 1:
        return list(a), 1
    return [x // c for x in a], c


def pseudo_divmod(a, b):
    """Fraction-free division: returns (q, r) with

        lc(b)^max(deg a - deg b + 1, 0) * a == q*b + r,   deg r < deg b.
    """
    a = trim(a)
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        return [], a
    lcb = b[-1]
    q = [0] * (da - db + 1)
    r = list(a)
    for k in range(da - db, -1, -1):
        qk = r[db + k]
        for i in range(len(q)):
            q[i] *= lcb
        for i in range(len(r)):
            r[i] *= lcb
        if qk:
            q[k] += qk
            for i in range(db + 1):
                r[k + i] -= qk * b[i]
    return trim(q), trim(r[:db])


def div_exact(a, b):
    """Exact quotient a/b over Z[t]; raises ValueError when b does not divide a."""
    a = trim(a)
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return []
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        raise ValueError("inexact polynomial division")
    lcb = b[-1]
    q = [0] * (da - db + 1)
    r = list(a)
    for k in range(da - db, -1, -1):
        qk, rem = divmod(r[db + k], lcb)
        if rem:
            raise ValueError("inexact polynomial division")
        q[k] = qk
        if qk:
            for i in range(db + 1):
                r[k + i] -= qk * b[i]
    if any(r):
        raise ValueError("inexact polynomial division")
    return trim(q)


def poly_gcd(a, b):
    """Primitive gcd over Z[t] (positive leading coefficient), via the
    primitive polynomial remainder sequence.  Content is discarded: the
    result generates the same ideal as gcd(a, b) in Q[t]."""
    a, _ = primitive(a)
    b, _ = primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        _, r = pseudo_divmod(a, b)
        a, b = b, primitive(r)[0]
    return a
