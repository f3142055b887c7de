"""Benchmark the compiled kernels against the pure-Python fallbacks.

Run as: python3 benchmarks/bench_kernels.py

The inputs mirror what the package actually feeds the kernels: subgroup
closures of moderate order, and integer matrices whose Smith form has
small invariant factors (boundary matrices are sparse and mostly
unimodular; random dense matrices would explode the intermediate
entries and benchmark nothing realistic).
"""

import os
import random
import subprocess
import sys
import time

from plocal import _purekernel

try:
    from plocal import _speedups
except ImportError:
    _speedups = None


def best_of(fn, repeat=3):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def sym_gens(n):
    swap = (1, 0) + tuple(range(2, n))
    cycle = tuple(range(1, n)) + (0,)
    return [swap, cycle]


def closure_pure(gens, cap):
    return _purekernel.mul_close(gens, cap)


def closure_compiled(gens, cap):
    degree = len(gens[0])
    packed = [bytes(g) for g in gens]
    return [tuple(b) for b in _speedups.mul_close_packed(packed, degree, cap)]


def smithlike_matrix(rng, m, n, factors):
    """L @ D @ R with one bounded mixing sweep on each side, so the Smith
    form is known and the entries stay small the way boundary matrices do."""
    a = [[0] * n for _ in range(m)]
    for k, d in enumerate(factors):
        a[k][k] = d
    for i in range(1, m):
        c = rng.choice((-1, 1))
        a[i] = [x + c * y for x, y in zip(a[i], a[i - 1])]
    for j in range(n - 2, -1, -1):
        c = rng.choice((-1, 1))
        for row in a:
            row[j] += c * row[j + 1]
    return a


def main():
    if _speedups is None:
        print("compiled kernels not importable; nothing to compare")
        return
    rows = []

    for n in (6, 7):
        gens = sym_gens(n)
        cap = 10000
        ref = closure_pure(gens, cap)
        assert ref == closure_compiled(gens, cap)
        tp = best_of(lambda: closure_pure(gens, cap))
        tc = best_of(lambda: closure_compiled(gens, cap))
        rows.append((f"closure sym({n}) ({len(ref)} elements)", tp, tc))

    rng = random.Random(11)
    for m, n, torsion in ((40, 50, (2, 2, 6)), (90, 110, (2, 4, 12, 24))):
        factors = [1] * (min(m, n) - len(torsion) - 4) + list(torsion)
        mat = smithlike_matrix(rng, m, n, factors)
        ref = _purekernel._dense_snf_diagonal([r[:] for r in mat])
        got = _speedups.dense_snf_i64([r[:] for r in mat])
        assert ref == got, (ref[-6:], got[-6:])
        tp = best_of(lambda: _purekernel._dense_snf_diagonal([r[:] for r in mat]))
        tc = best_of(lambda: _speedups.dense_snf_i64([r[:] for r in mat]))
        rows.append((f"dense Smith {m}x{n}", tp, tc))

    width = max(len(r[0]) for r in rows)
    print(f"{'benchmark':<{width}}  {'pure':>10}  {'compiled':>10}  {'speedup':>8}")
    for name, tp, tc in rows:
        print(f"{name:<{width}}  {tp:>9.4f}s  {tc:>9.4f}s  {tp / tc:>7.1f}x")
    sys.stdout.flush()

    # end to end: one whole-nerve homology run per backend, fresh process each
    script = (
        "import time; from plocal.library import build_library_group; "
        "from plocal.pcollect import build_collection; "
        "from plocal.posets import build_poset; from plocal.homology import homology; "
        "from plocal._kernel import backend_name; "
        "G = build_library_group('m11'); "
        "X = build_poset(build_collection(G, 3, 'hatS'), acting=G); "
        "t0 = time.perf_counter(); pr = homology(X.order_complex()); "
        "print(f'{backend_name()}: {time.perf_counter()-t0:.2f}s  H = {pr}')"
    )
    for pure in ("1", ""):
        env = dict(os.environ, PLOCAL_PURE_KERNELS=pure)
        subprocess.run([sys.executable, "-c", script], env=env, check=True)


if __name__ == "__main__":
    main()
