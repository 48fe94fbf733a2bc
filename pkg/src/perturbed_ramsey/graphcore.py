"""Immutable bit-row graphs and the set machinery shared by every other module.

Vertices are dense integers ``0..n-1``.  Each adjacency row is one Python int
used as a bitset, so neighbourhood intersection, clique extension and
common-neighbourhood queries reduce to word-parallel ``&``/``~`` operations.
All types are immutable after construction; operations return new values,
which makes them freely shareable across threads and worker processes.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional, TextIO, Union

#: Hard cap on vertex count.  Everything here targets desk-scale instances;
#: beyond this a streaming representation would be needed anyway.
MAX_VERTICES = 4096


class ContractViolation(ValueError):
    """An argument violates a documented precondition."""


def _iter_bits(bits: int) -> Iterator[int]:
    """Yield set bit positions in ascending order."""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def _bits_of(members: Iterable[int], n: int) -> int:
    bits = 0
    for v in members:
        if not 0 <= v < n:
            raise ContractViolation(f"vertex {v} outside universe 0..{n - 1}")
        bits |= 1 << v
    return bits


@dataclass(frozen=True)
class VertexSet:
    """A subset of the vertices ``0..n-1``, stored as a single bit row."""

    n: int
    bits: int

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_VERTICES:
            raise ContractViolation(f"universe size {self.n} outside 0..{MAX_VERTICES}")
        if self.bits < 0 or self.bits >> self.n:
            raise ContractViolation("membership bits outside the universe")

    @classmethod
    def of(cls, n: int, members: Iterable[int]) -> "VertexSet":
        return cls(n, _bits_of(members, n))

    def members(self) -> tuple[int, ...]:
        return tuple(_iter_bits(self.bits))

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __iter__(self) -> Iterator[int]:
        return _iter_bits(self.bits)

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self.n and (self.bits >> v) & 1 == 1

    def __repr__(self) -> str:
        return f"VertexSet({self.n}, {{{', '.join(map(str, self.members()))}}})"


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1`` with bit-row adjacency.

    Invariants enforced at construction: adjacency symmetric, zero diagonal,
    rows confined to the universe.  ``m`` is the edge count.
    """

    n: int
    adj: tuple[int, ...]
    m: int = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_VERTICES:
            raise ContractViolation(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise ContractViolation("adjacency must have one row per vertex")
        total = 0
        for v, row in enumerate(self.adj):
            if row < 0 or row >> self.n:
                raise ContractViolation(f"row {v} has bits outside the universe")
            if (row >> v) & 1:
                raise ContractViolation(f"loop at vertex {v}")
            total += row.bit_count()
        for v, row in enumerate(self.adj):
            for w in _iter_bits(row):
                if not (self.adj[w] >> v) & 1:
                    raise ContractViolation(f"adjacency not symmetric at {{{v}, {w}}}")
        object.__setattr__(self, "m", total // 2)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << v) for v in range(n)))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ContractViolation(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ContractViolation(f"edge {{{u}, {v}}} outside universe 0..{n - 1}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and 0 <= v < self.n and (self.adj[u] >> v) & 1 == 1

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> VertexSet:
        return VertexSet(self.n, self.adj[v])

    def edges(self) -> list[tuple[int, int]]:
        """All edges as ``(u, v)`` with ``u < v``, in lexicographic order."""
        out = []
        for u in range(self.n):
            higher = self.adj[u] >> (u + 1)
            for off in _iter_bits(higher):
                out.append((u, u + 1 + off))
        return out

    def vertex_set(self, members: Iterable[int]) -> VertexSet:
        return VertexSet.of(self.n, members)

    def all_vertices(self) -> VertexSet:
        return VertexSet(self.n, (1 << self.n) - 1)


@dataclass(frozen=True)
class PerturbedGraph:
    """Labelled union of a dense seed graph and a seeded random graph.

    ``seed_edges`` and ``random_edges`` jointly cover the union's edges; an
    edge present in both parts is recorded under both labels.  ``partition``
    is set when the seed is bipartite.
    """

    graph: Graph
    seed_edges: frozenset[tuple[int, int]]
    random_edges: frozenset[tuple[int, int]]
    partition: Optional[tuple[VertexSet, VertexSet]]
    gamma: Fraction
    p: Union[Fraction, float]
    rng_seed: int

    def __post_init__(self) -> None:
        union = self.seed_edges | self.random_edges
        if union != frozenset(self.graph.edges()):
            raise ContractViolation("seed and random labels must cover exactly the union's edges")
        if self.partition is not None:
            v1, v2 = self.partition
            if v1.n != self.graph.n or v2.n != self.graph.n:
                raise ContractViolation("partition universe mismatch")
            if v1.bits & v2.bits or (v1.bits | v2.bits) != (1 << self.graph.n) - 1:
                raise ContractViolation("partition classes must be disjoint and covering")

    def is_cross(self, u: int, v: int) -> bool:
        """Whether edge endpoints straddle the seed bipartition."""
        if self.partition is None:
            raise ContractViolation("graph has no recorded bipartition")
        v1 = self.partition[0].bits
        return ((v1 >> u) & 1) != ((v1 >> v) & 1)


def union(g1: Graph, g2: Graph) -> Graph:
    """Edge union of two graphs on the same vertex set."""
    if g1.n != g2.n:
        raise ContractViolation(f"vertex count mismatch: {g1.n} vs {g2.n}")
    return Graph(g1.n, tuple(a | b for a, b in zip(g1.adj, g2.adj)))


def induced(g: Graph, s: VertexSet) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph induced by ``s``, relabelled to ``0..|s|-1`` in ascending order.

    Returns the relabelled graph together with the map from new labels back
    to the original vertices.
    """
    if s.n != g.n:
        raise ContractViolation("vertex set universe mismatch")
    old = s.members()
    pos = {v: i for i, v in enumerate(old)}
    rows = []
    for v in old:
        row = 0
        for w in _iter_bits(g.adj[v] & s.bits):
            row |= 1 << pos[w]
        rows.append(row)
    return Graph(len(old), tuple(rows)), old


def common_neighborhood(g: Graph, s: VertexSet) -> VertexSet:
    """Vertices outside ``s`` adjacent to every member of ``s``."""
    if s.n != g.n:
        raise ContractViolation("vertex set universe mismatch")
    if s.bits == 0:
        raise ContractViolation("common neighbourhood of the empty set is undefined")
    bits = (1 << g.n) - 1
    for v in _iter_bits(s.bits):
        bits &= g.adj[v]
    return VertexSet(g.n, bits & ~s.bits)


def _iter_clique_bits(adj: tuple[int, ...], cand: int, need: int) -> Iterator[int]:
    """Yield bit masks of `need`-cliques within `cand`, in lexicographic order.

    Candidate-intersection extension: vertices are consumed in ascending
    order, and after popping v the candidate set is intersected with v's row,
    so every yielded mask lists vertices in increasing order.
    """
    if need == 0:
        yield 0
        return
    while cand:
        if cand.bit_count() < need:
            return
        low = cand & -cand
        v = low.bit_length() - 1
        cand ^= low
        for rest in _iter_clique_bits(adj, cand & adj[v], need - 1):
            yield low | rest


def iter_cliques(g: Graph, r: int) -> Iterator[VertexSet]:
    """Generate all r-vertex cliques in lexicographic order of vertex lists."""
    if r < 1:
        raise ContractViolation("clique size must be at least 1")
    full = (1 << g.n) - 1
    for bits in _iter_clique_bits(g.adj, full, r):
        yield VertexSet(g.n, bits)


def enumerate_cliques(g: Graph, r: int, limit: Optional[int] = None) -> tuple[list[VertexSet], bool]:
    """All r-cliques in lexicographic order; truncated at `limit` if given.

    Returns ``(cliques, truncated)``.
    """
    out: list[VertexSet] = []
    for vs in iter_cliques(g, r):
        if limit is not None and len(out) >= limit:
            return out, True
        out.append(vs)
    return out, False


def contains_clique(g: Graph, r: int) -> bool:
    """Early-exit clique existence test; never materializes the full list."""
    return next(iter_cliques(g, r), None) is not None


def first_clique_within(g: Graph, s: VertexSet, r: int) -> Optional[VertexSet]:
    """Lexicographically first r-clique of g lying inside ``s``, or None."""
    if s.n != g.n:
        raise ContractViolation("vertex set universe mismatch")
    if r < 1:
        raise ContractViolation("clique size must be at least 1")
    bits = next(_iter_clique_bits(g.adj, s.bits, r), None)
    return None if bits is None else VertexSet(g.n, bits)


def is_gamma_dense(g: Graph, gamma) -> bool:
    """Exact test of ``m >= gamma * n**2``."""
    gamma = Fraction(gamma)
    if gamma < 0:
        raise ContractViolation("density parameter must be non-negative")
    return Fraction(g.m) >= gamma * g.n * g.n


# Text format: line 1 `n m`, then m lines `u v` with u < v in ascending
# lexicographic order; `#` starts a comment.  Writers emit the canonical
# order so equal graphs serialize to identical bytes.

def write_graph(g: Graph, sink: Union[str, os.PathLike, TextIO]) -> None:
    """Write the canonical text representation of ``g``."""
    if isinstance(sink, (str, os.PathLike)):
        with open(sink, "w", newline="\n") as fh:
            write_graph(g, fh)
        return
    sink.write(f"{g.n} {g.m}\n")
    for u, v in g.edges():
        sink.write(f"{u} {v}\n")


def read_graph(source: Union[str, os.PathLike, TextIO]) -> Graph:
    """Parse the text format.  Accepts comments and any edge order."""
    if isinstance(source, (str, os.PathLike)):
        with open(source) as fh:
            return read_graph(fh)
    lines = []
    for raw in source:
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ContractViolation("empty graph file")
    head = lines[0].split()
    if len(head) != 2:
        raise ContractViolation("header must be `n m`")
    n, m = int(head[0]), int(head[1])
    edges = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise ContractViolation(f"malformed edge line: {line!r}")
        u, v = int(parts[0]), int(parts[1])
        if not 0 <= u < v < n:
            raise ContractViolation(f"edge ({u}, {v}) violates 0 <= u < v < n")
        edges.append((u, v))
    if len(edges) != m or len(set(edges)) != m:
        raise ContractViolation("edge count does not match header")
    return Graph.from_edges(n, edges)
