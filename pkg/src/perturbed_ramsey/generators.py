"""Seeded, reproducible random-object generation.

RNG compatibility promise
-------------------------
All randomness flows through NumPy's Philox (4x64, 10 rounds) counter-based
bit generator keyed directly by the 64-bit seed.  A binomial random graph is
drawn with exactly one uniform float64 per potential edge, in ascending
lexicographic edge order, and the edge is included iff the draw is strictly
below ``float(p)`` (the probability rounded once to 53-bit binary).  Parallel
or multi-trial callers derive private stream seeds through
:func:`derive_seed`, a fixed SplitMix64 mix of ``(master_seed, stream)``.
Same seed, same graph, forever.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .graphcore import ContractViolation, Graph, PerturbedGraph, VertexSet, union

Probability = Union[Fraction, float, int, str]

_MASK64 = (1 << 64) - 1
_SPLITMIX_GAMMA = 0x9E3779B97F4A7C15


def _splitmix64(x: int) -> int:
    x &= _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def derive_seed(master_seed: int, stream: int) -> int:
    """Pure mapping (master seed, stream index) -> 64-bit stream seed."""
    if stream < 0:
        raise ContractViolation("stream index must be non-negative")
    x = (master_seed + (stream + 1) * _SPLITMIX_GAMMA) & _MASK64
    return _splitmix64(x)


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed & _MASK64))


def parse_probability(p: Probability) -> Union[Fraction, float]:
    """Canonicalize a probability given as Fraction, int, float, or string.

    Strings may be decimals (``"0.25"``) or fractions (``"1/4"``); both parse
    exactly.  Floats stay floats.  The value must lie in [0, 1].
    """
    if isinstance(p, str):
        if "/" in p:
            value: Union[Fraction, float] = Fraction(p)
        else:
            value = Fraction(p)
    elif isinstance(p, (int, Fraction)):
        value = Fraction(p)
    elif isinstance(p, float):
        value = p
    else:
        raise ContractViolation(f"unsupported probability type {type(p).__name__}")
    if not 0 <= value <= 1:
        raise ContractViolation(f"probability {p!r} outside [0, 1]")
    return value


def gnp(n: int, p: Probability, seed: int) -> Graph:
    """Binomial random graph: each potential edge appears with probability p.

    Draws are made in lexicographic edge order and compared against the
    53-bit rounding of p, so graphs with the same seed are nested as p grows.
    """
    if n < 0:
        raise ContractViolation("vertex count must be non-negative")
    threshold = float(parse_probability(p))
    n_pairs = math.comb(n, 2)
    if n_pairs == 0:
        return Graph.empty(n)
    draws = _rng(seed).random(n_pairs)
    mask = draws < threshold
    us, vs = np.triu_indices(n, k=1)
    dense = np.zeros((n, n), dtype=bool)
    dense[us[mask], vs[mask]] = True
    dense |= dense.T
    packed = np.packbits(dense, axis=1, bitorder="little")
    rows = tuple(int.from_bytes(packed[v].tobytes(), "little") for v in range(n))
    return Graph(n, rows)


def complete_bipartite(n: int) -> tuple[Graph, VertexSet, VertexSet]:
    """The balanced complete bipartite graph, first class of size ceil(n/2)."""
    if n < 2:
        raise ContractViolation("complete bipartite seed needs at least 2 vertices")
    k = (n + 1) // 2
    v1_bits = (1 << k) - 1
    v2_bits = ((1 << n) - 1) ^ v1_bits
    rows = tuple(v2_bits if v < k else v1_bits for v in range(n))
    g = Graph(n, rows)
    return g, VertexSet(n, v1_bits), VertexSet(n, v2_bits)


def perturbed(
    seed_kind: str,
    n: int,
    p: Probability,
    seed: int,
    seed_graph: Optional[Graph] = None,
) -> PerturbedGraph:
    """Union of a dense seed graph and an independent binomial random graph.

    ``seed_kind`` is ``"complete-bipartite"`` (balanced, partition recorded)
    or ``"file"`` (caller supplies ``seed_graph`` on the same vertex set).
    """
    if seed_kind == "complete-bipartite":
        dense, v1, v2 = complete_bipartite(n)
        partition: Optional[tuple[VertexSet, VertexSet]] = (v1, v2)
    elif seed_kind == "file":
        if seed_graph is None:
            raise ContractViolation("file seed requires a seed graph")
        if seed_graph.n != n:
            raise ContractViolation(f"seed graph has {seed_graph.n} vertices, expected {n}")
        dense = seed_graph
        partition = None
    else:
        raise ContractViolation(f"unknown seed kind {seed_kind!r}")
    random_part = gnp(n, p, seed)
    g = union(dense, random_part)
    return PerturbedGraph(
        graph=g,
        seed_edges=frozenset(dense.edges()),
        random_edges=frozenset(random_part.edges()),
        partition=partition,
        gamma=Fraction(dense.m, n * n),
        p=parse_probability(p),
        rng_seed=seed,
    )


def expected_clique_count(n: int, p: Probability, r: int) -> Union[Fraction, float]:
    """Expected number of r-cliques in G(n, p): ``C(n, r) * p**C(r, 2)``.

    Exact when p is rational; float when p is a float.
    """
    if r < 2:
        raise ContractViolation("clique size must be at least 2")
    value = parse_probability(p)
    return math.comb(n, r) * value ** math.comb(r, 2)


def perturbed_sidecar(pg: PerturbedGraph, seed_kind: str) -> dict:
    """JSON-ready metadata describing a perturbed graph instance."""
    partition = None
    if pg.partition is not None:
        partition = [list(pg.partition[0].members()), list(pg.partition[1].members())]
    return {
        "n": pg.graph.n,
        "p": str(pg.p) if isinstance(pg.p, Fraction) else pg.p,
        "seed": pg.rng_seed,
        "seed_kind": seed_kind,
        "partition": partition,
        "seed_edge_count": len(pg.seed_edges),
        "random_edge_count": len(pg.random_edges),
    }
