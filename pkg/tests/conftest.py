"""Shared test helpers: seeded random graphs and independent brute-force oracles.

The oracles here deliberately avoid the package's bitset machinery — they
work from ``has_edge`` and ``itertools`` only, so agreement tests check two
genuinely different routes.
"""

from __future__ import annotations

import random
from itertools import combinations

from perturbed_ramsey.graphcore import Graph


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [e for e in combinations(range(n), 2) if rng.random() < p]
    return Graph.from_edges(n, edges)


def random_graph_with_max_edges(rng: random.Random, max_n: int, max_m: int) -> Graph:
    n = rng.randint(2, max_n)
    pairs = list(combinations(range(n), 2))
    rng.shuffle(pairs)
    m = rng.randint(0, min(max_m, len(pairs)))
    return Graph.from_edges(n, pairs[:m])


def oracle_arrows_edge(g: Graph, s: int, t: int) -> bool:
    """Exhaustive check over all 2^m edge colourings (0 = red, 1 = blue)."""
    edges = g.edges()
    m = len(edges)
    s_cliques = [
        [edges.index((min(u, v), max(u, v))) for u, v in combinations(c, 2)]
        for c in combinations(range(g.n), s)
        if all(g.has_edge(u, v) for u, v in combinations(c, 2))
    ]
    t_cliques = [
        [edges.index((min(u, v), max(u, v))) for u, v in combinations(c, 2)]
        for c in combinations(range(g.n), t)
        if all(g.has_edge(u, v) for u, v in combinations(c, 2))
    ]
    for mask in range(1 << m):
        red_ok = any(all(not (mask >> e) & 1 for e in cl) for cl in s_cliques)
        if red_ok:
            continue
        blue_ok = any(all((mask >> e) & 1 for e in cl) for cl in t_cliques)
        if not blue_ok:
            return False
    return True


def oracle_arrows_vertex(g: Graph, r: int) -> bool:
    """Exhaustive check over all 2^n vertex colourings."""
    cliques = [
        c
        for c in combinations(range(g.n), r)
        if all(g.has_edge(u, v) for u, v in combinations(c, 2))
    ]
    for mask in range(1 << g.n):
        mono = any(
            all((mask >> v) & 1 == 0 for v in c) or all((mask >> v) & 1 == 1 for v in c)
            for c in cliques
        )
        if not mono:
            return False
    return True


def oracle_common_neighbors(g: Graph, members) -> set[int]:
    out = set()
    for w in range(g.n):
        if w in members:
            continue
        if all(g.has_edge(w, v) for v in members):
            out.add(w)
    return out
