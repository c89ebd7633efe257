"""Unit and parity tests for the integer-polynomial kernels.

The compiled backend must agree with the pure one bit for bit on random
inputs; the division/gcd contracts are checked against their defining
identities.
"""

import random

import pytest

from matprime import _kernel_py

try:
    from matprime import _kernel_cy

    BACKENDS = [_kernel_py, _kernel_cy]
except ImportError:
    _kernel_cy = None
    BACKENDS = [_kernel_py]


def _rand_poly(rng, max_deg=8, span=30, allow_zero=True):
    deg = rng.randint(-1 if allow_zero else 0, max_deg)
    if deg < 0:
        return []
    c = [rng.randint(-span, span) for _ in range(deg + 1)]
    if c[-1] == 0:
        c[-1] = rng.randint(1, span)
    return c


@pytest.mark.parametrize("k", BACKENDS, ids=lambda m: m.BACKEND)
def test_basic_ops(k):
    assert k.add([1, 2], [3]) == [4, 2]
    assert k.add([1, 2], [3, -2]) == [4]
    assert k.sub([1], [1]) == []
    assert k.mul([1, 1], [1, 1]) == [1, 2, 1]
    assert k.mul([], [1, 2]) == []
    assert k.scale([1, 2], 0) == []
    assert k.deriv([5, 3, 2]) == [3, 4]
    assert k.content([6, -9, 12]) == 3
    assert k.primitive([-4, -6]) == ([2, 3], -2)
    assert k.primitive([]) == ([], 0)
    assert k.trim([1, 0, 0]) == [1]


@pytest.mark.parametrize("k", BACKENDS, ids=lambda m: m.BACKEND)
def test_pseudo_divmod_identity(k):
    rng = random.Random(5)
    for _ in range(200):
        a = _rand_poly(rng)
        b = _rand_poly(rng, allow_zero=False)
        q, r = k.pseudo_divmod(a, b)
        s = max(len(k.trim(a)) - len(k.trim(b)) + 1, 0)
        m = k.trim(b)[-1] ** s
        lhs = k.scale(a, m)
        rhs = k.add(k.mul(q, b), r)
        assert k.trim(lhs) == k.trim(rhs)
        assert len(r) < len(k.trim(b))


@pytest.mark.parametrize("k", BACKENDS, ids=lambda m: m.BACKEND)
def test_div_exact(k):
    rng = random.Random(6)
    for _ in range(200):
        a = _rand_poly(rng, allow_zero=False)
        b = _rand_poly(rng, allow_zero=False)
        prod = k.mul(a, b)
        assert k.div_exact(prod, b) == k.trim(a)
    with pytest.raises(ValueError):
        k.div_exact([1, 1], [2, 3, 4])


@pytest.mark.parametrize("k", BACKENDS, ids=lambda m: m.BACKEND)
def test_gcd_contracts(k):
    rng = random.Random(7)
    for _ in range(100):
        g = _rand_poly(rng, max_deg=3, allow_zero=False)
        a = k.mul(_rand_poly(rng, 4, allow_zero=False), g)
        b = k.mul(_rand_poly(rng, 4, allow_zero=False), g)
        d = k.poly_gcd(a, b)
        # gcd divides both and is divisible by g
        k.div_exact(a, d)
        k.div_exact(b, d)
        prim_g, _ = k.primitive(g)
        k.div_exact(d, prim_g)
        assert d[-1] > 0


@pytest.mark.skipif(_kernel_cy is None, reason="compiled kernel not built")
def test_backends_agree():
    rng = random.Random(8)
    for _ in range(300):
        a = _rand_poly(rng, max_deg=10, span=10**6)
        b = _rand_poly(rng, max_deg=10, span=10**6)
        assert _kernel_py.add(a, b) == _kernel_cy.add(a, b)
        assert _kernel_py.sub(a, b) == _kernel_cy.sub(a, b)
        assert _kernel_py.mul(a, b) == _kernel_cy.mul(a, b)
        assert _kernel_py.primitive(a) == _kernel_cy.primitive(a)
        if b:
            assert _kernel_py.pseudo_divmod(a, b) == _kernel_cy.pseudo_divmod(a, b)
        assert _kernel_py.poly_gcd(a, b) == _kernel_cy.poly_gcd(a, b)
