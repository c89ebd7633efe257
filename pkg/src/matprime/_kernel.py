"""Kernel backend selection.

Imports the compiled Cython kernels when available, falling back to the
pure-Python twin.  Set MATPRIME_BACKEND=py to force the pure backend
(useful for benchmarking and debugging).
"""

import os

_forced = os.environ.get("MATPRIME_BACKEND", "").lower()

if _forced in ("py", "python", "pure"):
    from matprime import _kernel_py as impl
elif _forced in ("cy", "cython"):
    from matprime import _kernel_cy as impl  # type: ignore[no-redef]
else:
    try:
        from matprime import _kernel_cy as impl  # type: ignore[no-redef]
    except ImportError:
        from matprime import _kernel_py as impl  # type: ignore[no-redef]

BACKEND = impl.BACKEND

trim = impl.trim
add = impl.add
sub = impl.sub
neg = impl.neg
scale = impl.scale
mul = impl.mul
deriv = impl.deriv
content = impl.content
primitive = impl.primitive
pseudo_divmod = impl.pseudo_divmod
div_exact = impl.div_exact
poly_gcd = impl.poly_gcd
