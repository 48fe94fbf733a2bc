#!/usr/bin/env python3
"""Benchmark the compiled search kernel against the pure-Python fallback.

Both backends implement the identical clause-learning search, so verdicts
and node counts must agree; only wall time differs.  Run after installing
the package (`pip install -e . --no-build-isolation`):

    python benchmarks/bench_kernels.py
"""

from __future__ import annotations

import time
from itertools import combinations

from perturbed_ramsey import _pykernels
from perturbed_ramsey.generators import derive_seed, perturbed
from perturbed_ramsey.graphcore import Graph, enumerate_cliques

try:
    from perturbed_ramsey import _kernels
except ImportError:
    _kernels = None

STATUS = {0: "arrows", 1: "not-arrows", 2: "unknown"}


def edge_instance(g: Graph, s: int, t: int):
    edges = g.edges()
    index = {e: i for i, e in enumerate(edges)}
    pols, var_lists = [], []
    for cliques, pol in ((enumerate_cliques(g, s)[0], 1), (enumerate_cliques(g, t)[0], 0)):
        for clique in cliques:
            var_lists.append(tuple(index[e] for e in combinations(clique.members(), 2)))
            pols.append(pol)
    counts = [0] * len(edges)
    for lst in var_lists:
        for e in lst:
            counts[e] += 1
    order = sorted(range(len(edges)), key=lambda e: (-counts[e], e))
    return len(edges), pols, var_lists, order, s == t


def near_critical_batch(n: int, p: float, count: int):
    """Perturbed bipartite instances near the triangle-arrowing threshold."""
    out = []
    for i in range(count):
        seed = derive_seed(derive_seed(1202, n), i)
        pg = perturbed("complete-bipartite", n, p, seed)
        out.append(edge_instance(pg.graph, 3, 3))
    return out


def run(backend, instances):
    start = time.perf_counter()
    results = [backend.solve_two_sided(*inst) for inst in instances]
    return time.perf_counter() - start, results


def main() -> None:
    cases = [
        ("K6 -> (K3,K3) proof", [edge_instance(Graph.complete(6), 3, 3)]),
        ("K9 -> (K3,K4) proof", [edge_instance(Graph.complete(9), 3, 4)]),
        ("K8 (3,4) witness search", [edge_instance(Graph.complete(8), 3, 4)]),
        ("perturbed n=20 p=0.25, 30 seeds", near_critical_batch(20, 0.25, 30)),
        ("perturbed n=24 p=0.22, 10 seeds", near_critical_batch(24, 0.22, 10)),
    ]
    print(f"{'instance':38} {'python':>12} {'compiled':>12} {'speedup':>9}  outcome")
    for name, instances in cases:
        t_py, res_py = run(_pykernels, instances)
        verdicts = ",".join(sorted({STATUS[r[0]] for r in res_py}))
        nodes = sum(r[2] for r in res_py)
        if _kernels is None:
            print(f"{name:38} {t_py * 1e3:10.1f}ms {'n/a':>12} {'':>9}  {verdicts}, {nodes} nodes")
            continue
        t_c, res_c = run(_kernels, instances)
        agree = res_py == res_c
        print(
            f"{name:38} {t_py * 1e3:10.1f}ms {t_c * 1e3:10.1f}ms "
            f"{t_py / t_c:8.1f}x  {verdicts}, {nodes} nodes"
            + ("" if agree else "  !! BACKEND MISMATCH")
        )
    if _kernels is None:
        print("\ncompiled kernel not built; install with a C toolchain to compare")


if __name__ == "__main__":
    main()
