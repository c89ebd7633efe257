# cython: language_level=3
"""Cython kernels for dense integer-coefficient polynomial arithmetic.

Compiled twin of `matprime._kernel_py` — same representation (little-endian
int lists, no trailing zeros), same functions, same results bit for bit.
Coefficients stay arbitrary-precision Python ints; the speedup comes from
removing interpreter overhead in the inner loops.
"""

from math import gcd as _int_gcd

BACKEND = "cython"


def trim(c):
    """Drop trailing zero coefficients (returns a new list)."""
    cdef Py_ssize_t n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return list(c[:n])


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    cdef list out = list(a)
    cdef Py_ssize_t i
    for i in range(len(b)):
        out[i] = out[i] + b[i]
    return trim(out)


def sub(a, b):
    cdef list out = list(a)
    cdef Py_ssize_t i
    if len(b) > len(out):
        out.extend([0] * (len(b) - len(out)))
    for i in range(len(b)):
        out[i] = out[i] - b[i]
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
    cdef Py_ssize_t la = len(a), lb = len(b)
    cdef list out = [0] * (la + lb - 1)
    cdef Py_ssize_t i, j
    for i in range(la):
        ai = a[i]
        if not ai:
            continue
        for j in range(lb):
            out[i + j] = out[i + j] + ai * b[j]
    return out


def deriv(a):
    """d/dt of the polynomial."""
    cdef Py_ssize_t i
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
    cdef Py_ssize_t da = len(a) - 1, db = len(b) - 1
    if da < db:
        return [], a
    lcb = b[db]
    cdef list q = [0] * (da - db + 1)
    cdef list r = list(a)
    cdef Py_ssize_t k, i
    for k in range(da - db, -1, -1):
        qk = r[db + k]
        for i in range(len(q)):
            q[i] = q[i] * lcb
        for i in range(len(r)):
            r[i] = r[i] * lcb
        if qk:
            q[k] = q[k] + qk
            for i in range(db + 1):
                r[k + i] = r[k + i] - qk * b[i]
    return trim(q), trim(r[:db])


def div_exact(a, b):
    """Exact quotient a/b over Z[t]; raises ValueError when b does not divide a."""
    a = trim(a)
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return []
    cdef Py_ssize_t da = len(a) - 1, db = len(b) - 1
    if da < db:
        raise ValueError("inexact polynomial division")
    lcb = b[db]
    cdef list q = [0] * (da - db + 1)
    cdef list r = list(a)
    cdef Py_ssize_t k, i
    for k in range(da - db, -1, -1):
        qk, rem = divmod(r[db + k], lcb)
        if rem:
            raise ValueError("inexact polynomial division")
        q[k] = qk
        if qk:
            for i in range(db + 1):
                r[k + i] = r[k + i] - qk * b[i]
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
