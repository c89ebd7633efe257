"""Benchmark the compiled polynomial kernels against the pure-Python twin.

Times the hot primitives (multiplication, primitive-PRS gcd, pseudo
division) and one end-to-end symbolic workload on both backends and
prints a comparison table.  Run with:

    python3 benchmarks/bench_kernels.py
"""

from __future__ import annotations

import random
import time

from matprime import _kernel_py

try:
    from matprime import _kernel_cy
except ImportError:
    _kernel_cy = None


def _random_poly(rng, degree, coeff_bits):
    return [rng.randint(-(2**coeff_bits), 2**coeff_bits) for _ in range(degree)] + [
        rng.randint(1, 2**coeff_bits)
    ]


def _time(func, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        func()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernel(mod):
    rng = random.Random(12345)
    pairs = [
        (_random_poly(rng, 40, 64), _random_poly(rng, 40, 64)) for _ in range(40)
    ]
    gcd_pairs = []
    for _ in range(10):
        g = _random_poly(rng, 6, 16)
        a = mod.mul(_random_poly(rng, 12, 16), g)
        b = mod.mul(_random_poly(rng, 12, 16), g)
        gcd_pairs.append((a, b))
    results = {}
    results["mul (deg 40)"] = _time(
        lambda: [mod.mul(a, b) for a, b in pairs]
    )
    results["gcd (deg 18, shared deg-6 factor)"] = _time(
        lambda: [mod.poly_gcd(a, b) for a, b in gcd_pairs]
    )
    results["pseudo_divmod (deg 40 / deg 20)"] = _time(
        lambda: [mod.pseudo_divmod(a, b[:21]) for a, b in pairs]
    )
    return results


def bench_workload(backend_env):
    """End-to-end: classify the pinned rank-one example repeatedly in a
    subprocess pinned to one backend."""
    import subprocess
    import sys

    code = (
        "import time\n"
        "from matprime.expr import parse_ratfunc as P\n"
        "from matprime.linalg import Mat\n"
        "from matprime.classify import classify\n"
        "rows=[['t^2','t^3','t^4'],['-2*t','-2*t^2','-2*t^3'],['1','t','t^2']]\n"
        "m=Mat([[P(e) for e in r] for r in rows])\n"
        "t0=time.perf_counter()\n"
        "for _ in range(20): classify(m)\n"
        "print(time.perf_counter()-t0)\n"
    )
    out = subprocess.run(
        [sys.executable, "-c", code],
        capture_output=True,
        text=True,
        env={**__import__("os").environ, "MATPRIME_BACKEND": backend_env},
    )
    return float(out.stdout.strip())


def main():
    mods = [("python", _kernel_py)]
    if _kernel_cy is not None:
        mods.append(("cython", _kernel_cy))
    else:
        print("compiled kernel not available; benchmarking the pure backend only")

    tables = {name: bench_kernel(mod) for name, mod in mods}
    keys = list(next(iter(tables.values())))
    width = max(len(k) for k in keys) + 2
    header = f"{'kernel primitive':<{width}}" + "".join(
        f"{name:>12}" for name, _ in mods
    )
    if len(mods) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for k in keys:
        row = f"{k:<{width}}"
        for name, _ in mods:
            row += f"{tables[name][k] * 1e3:>10.2f}ms"
        if len(mods) == 2:
            row += f"{tables['python'][k] / tables['cython'][k]:>9.2f}x"
        print(row)

    print()
    print("end-to-end: classify 3x3 rank-one example, 20 repetitions")
    py = bench_workload("py")
    print(f"  python backend: {py * 1e3:.1f}ms")
    if _kernel_cy is not None:
        cy = bench_workload("cy")
        print(f"  cython backend: {cy * 1e3:.1f}ms  ({py / cy:.2f}x)")


if __name__ == "__main__":
    main()
