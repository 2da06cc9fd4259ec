"""Benchmark the pure-Python and compiled term-algebra kernels.

Times the hot kernel functions on inputs captured from real
computations: the Schouten square of the rank-2 quadratic bracket, the
action-field products, entry-table brackets of the 3x3 standard bracket,
and biderivation scans.  Run as ``python benchmarks/bench_backends.py``.
"""

import time
from fractions import Fraction

from qpverify import grouppois, liealg, polyfield
from qpverify.termops import backends


def best_of(fn, repeats=3):
    best = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best


def main():
    impls = backends()
    if "compiled" not in impls:
        print("compiled backend not built; run pip install -e . first")
    L = liealg.algebra("A", 2)
    f0 = polyfield.quadratic_bracket(L, 1)
    rm = polyfield.rmatrix_bracket(liealg.canonical_tensors(L).r_sd)
    sk = grouppois.build_sklyanin_bracket(L)
    coords = [polyfield.coordinate(L, i) for i in range(L.dim)]
    quad = {}
    for i in range(L.dim):
        for j in range(L.dim):
            e = [0] * L.dim
            e[i] += 1
            e[j] += 1
            quad[tuple(e)] = Fraction(i - j, i + j + 1) if i != j else Fraction(1, i + 1)
    entry_quads = []
    n2 = L.msize * L.msize
    for u in range(n2):
        for v in range(u + 1, n2):
            e = [0] * n2
            e[u] += 1
            e[v] += 1
            entry_quads.append({tuple(e): Fraction(1)})

    workloads = {
        "sn_bracket quadratic^2 (rank 2)": lambda impl: impl.sn_bracket(
            f0.terms, 2, f0.terms, 2
        ),
        "sn_bracket quadratic x r-field": lambda impl: impl.sn_bracket(
            f0.terms, 2, rm.terms, 2
        ),
        "smul field wedge": lambda impl: impl.smul(f0.terms, rm.terms),
        "pmul dense quadratics": lambda impl: impl.pmul(quad, quad),
        "table_bracket 3x3 entries": lambda impl: [
            impl.table_bracket(sk.table, p, q)
            for p in entry_quads[:12]
            for q in entry_quads[:12]
        ],
        "bivector_eval coordinate scan": lambda impl: [
            impl.bivector_eval(f0.terms, a, b) for a in coords for b in coords
        ],
    }

    print(f"{'workload':36s} " + " ".join(f"{name:>10s}" for name in impls))
    results = {}
    for label, job in workloads.items():
        times = {}
        for name, impl in impls.items():
            times[name] = best_of(lambda: job(impl))
        results[label] = times
        row = f"{label:36s} " + " ".join(f"{times[name]*1000:9.1f}ms" for name in impls)
        if "pure" in times and "compiled" in times and times["compiled"]:
            row += f"   x{times['pure'] / times['compiled']:.2f}"
        print(row)
    return results


if __name__ == "__main__":
    main()
