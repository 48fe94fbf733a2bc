"""Exact Ramsey arrowing deciders with witness extraction.

``arrows_edge(g, s, t)`` decides whether every red/blue colouring of the
edges of g contains a red s-clique or a blue t-clique; ``arrows_vertex``
does the same for vertex colourings and a single clique size.  Both return
a tri-state verdict: a ``not-arrows`` verdict always carries a witness
colouring that is re-verified before being returned, and ``unknown`` is
reported only when an explicit budget runs out.

The search branches over edges (or vertices) in a fixed heuristic order
(descending number of target cliques through the edge, ties broken by
lexicographic index, red tried first) with unit propagation: once all but
one edge of an s-clique is red, the last edge is forced blue, and
symmetrically.  Conflicts are analyzed and learned as new clauses with
backjumping, which keeps near-critical instances tractable; the search is
restart-free and fully deterministic.  Instances whose clique count exceeds
``clique_cap`` switch to a lazy backtracker that detects completed
monochromatic cliques on the fly instead of materializing clause lists.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, TextIO, Union

from . import kernels
from .graphcore import (
    ContractViolation,
    Graph,
    VertexSet,
    _iter_clique_bits,
    enumerate_cliques,
    first_clique_within,
    iter_cliques,
)

RED = kernels.RED
BLUE = kernels.BLUE

ARROWS = "arrows"
NOT_ARROWS = "not-arrows"
UNKNOWN = "unknown"

#: Above this many precomputed cliques per call the deciders switch to the
#: lazy completion-check search.
DEFAULT_CLIQUE_CAP = 200_000


class VerificationError(RuntimeError):
    """A result failed its own re-verification; indicates an internal bug."""


@dataclass(frozen=True)
class Budget:
    """Node and/or wall-clock budget for a single decider call."""

    max_nodes: Optional[int] = None
    max_ms: Optional[float] = None

    def __post_init__(self) -> None:
        if self.max_nodes is not None and self.max_nodes <= 0:
            raise ContractViolation("node budget must be positive")
        if self.max_ms is not None and self.max_ms <= 0:
            raise ContractViolation("time budget must be positive")

    def kernel_args(self) -> tuple[int, float]:
        return self.max_nodes or 0, self.max_ms or 0.0


@dataclass(frozen=True)
class EdgeColoring:
    """Red/blue assignment to a host edge list (lexicographic order)."""

    n: int
    edges: tuple[tuple[int, int], ...]
    colors: tuple[int, ...]
    _index: dict = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        if len(self.edges) != len(self.colors):
            raise ContractViolation("one colour per edge required")
        prev = None
        for u, v in self.edges:
            if not 0 <= u < v < self.n:
                raise ContractViolation(f"edge ({u}, {v}) violates 0 <= u < v < n")
            if prev is not None and (u, v) <= prev:
                raise ContractViolation("edge list must be strictly lexicographic")
            prev = (u, v)
        if any(c not in (RED, BLUE) for c in self.colors):
            raise ContractViolation("colours must be 0 (red) or 1 (blue)")
        object.__setattr__(self, "_index", {e: i for i, e in enumerate(self.edges)})

    @classmethod
    def for_graph(cls, g: Graph, colors) -> "EdgeColoring":
        return cls(g.n, tuple(g.edges()), tuple(colors))

    def color_of(self, u: int, v: int) -> int:
        if u > v:
            u, v = v, u
        return self.colors[self._index[(u, v)]]

    def monochromatic_subgraph(self, color: int) -> Graph:
        return Graph.from_edges(
            self.n, [e for e, c in zip(self.edges, self.colors) if c == color]
        )

    def count(self, color: int) -> int:
        return sum(1 for c in self.colors if c == color)


@dataclass(frozen=True)
class VertexColoring:
    """Red/blue assignment to the vertices ``0..n-1``."""

    n: int
    colors: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.colors) != self.n:
            raise ContractViolation("one colour per vertex required")
        if any(c not in (RED, BLUE) for c in self.colors):
            raise ContractViolation("colours must be 0 (red) or 1 (blue)")

    def class_bits(self, color: int) -> int:
        bits = 0
        for v, c in enumerate(self.colors):
            if c == color:
                bits |= 1 << v
        return bits


@dataclass(frozen=True)
class ArrowVerdict:
    """Outcome of a decider: arrows / not-arrows(witness) / unknown."""

    kind: str
    witness: Union[EdgeColoring, VertexColoring, None]
    nodes: int
    elapsed_ms: float

    @property
    def arrows(self) -> bool:
        return self.kind == ARROWS


def find_mono_clique(
    g: Graph, coloring: EdgeColoring, s: int, t: int
) -> Optional[tuple[int, VertexSet]]:
    """First red s-clique, else first blue t-clique, else None.

    Red is checked first; within a colour the lexicographically first clique
    is returned.
    """
    if coloring.n != g.n or coloring.edges != tuple(g.edges()):
        raise ContractViolation("colouring does not match the host graph")
    red = coloring.monochromatic_subgraph(RED)
    hit = next(iter_cliques(red, s), None)
    if hit is not None:
        return RED, hit
    blue = coloring.monochromatic_subgraph(BLUE)
    hit = next(iter_cliques(blue, t), None)
    if hit is not None:
        return BLUE, hit
    return None


def _mono_vertex_class_clique(g: Graph, coloring: VertexColoring, r: int):
    """(colour, clique) for the first colour class containing an r-clique."""
    for color in (RED, BLUE):
        hit = first_clique_within(g, VertexSet(g.n, coloring.class_bits(color)), r)
        if hit is not None:
            return color, hit
    return None


def _clique_edge_clauses(cliques: list[VertexSet], edge_index: dict, pol: int):
    pols, var_lists = [], []
    for vs in cliques:
        members = vs.members()
        var_lists.append(
            tuple(edge_index[(u, v)] for u, v in combinations(members, 2))
        )
        pols.append(pol)
    return pols, var_lists


def arrows_edge(
    g: Graph,
    s: int,
    t: int,
    budget: Optional[Budget] = None,
    clique_cap: int = DEFAULT_CLIQUE_CAP,
) -> ArrowVerdict:
    """Decide whether every edge 2-colouring of g has a red K_s or blue K_t."""
    if s < 2 or t < 2:
        raise ContractViolation("clique targets must be at least 2")
    start = time.perf_counter()
    max_nodes, max_ms = (budget or Budget()).kernel_args()

    cliques_s, trunc_s = enumerate_cliques(g, s, limit=clique_cap)
    cliques_t, trunc_t = enumerate_cliques(g, t, limit=clique_cap)
    if trunc_s or trunc_t:
        return _lazy_arrows_edge(g, s, t, max_nodes, max_ms, start)

    edges = g.edges()
    edge_index = {e: i for i, e in enumerate(edges)}
    pols_s, vars_s = _clique_edge_clauses(cliques_s, edge_index, BLUE)
    pols_t, vars_t = _clique_edge_clauses(cliques_t, edge_index, RED)
    pols = pols_s + pols_t
    var_lists = vars_s + vars_t

    counts = [0] * len(edges)
    for vs in var_lists:
        for e in vs:
            counts[e] += 1
    order = sorted(range(len(edges)), key=lambda e: (-counts[e], e))

    status, assignment, nodes = kernels.solve_two_sided(
        len(edges), pols, var_lists, order, s == t, max_nodes, max_ms
    )
    elapsed = (time.perf_counter() - start) * 1000.0
    if status == kernels.BUDGET:
        return ArrowVerdict(UNKNOWN, None, nodes, elapsed)
    if status == kernels.UNSAT:
        return ArrowVerdict(ARROWS, None, nodes, elapsed)
    witness = EdgeColoring(g.n, tuple(edges), tuple(assignment))
    if find_mono_clique(g, witness, s, t) is not None:
        raise VerificationError("search produced an invalid edge-colouring witness")
    return ArrowVerdict(NOT_ARROWS, witness, nodes, elapsed)


def _lazy_arrows_edge(
    g: Graph, s: int, t: int, max_nodes: int, max_ms: float, start: float
) -> ArrowVerdict:
    """Completion-check backtracker used when clique lists are too large.

    Edges are processed in lexicographic order; assigning an edge checks
    whether it completes a monochromatic clique in its colour.
    """
    edges = g.edges()
    m = len(edges)
    red_rows = [0] * g.n
    blue_rows = [0] * g.n
    rows_by_color = (red_rows, blue_rows)
    close_size = (s - 2, t - 2)
    deadline = start + max_ms / 1000.0 if max_ms else None
    fix_first = s == t

    values = [-1] * m
    nodes = 0
    k = 0
    candidate = RED
    while True:
        if k == m:
            witness = EdgeColoring(g.n, tuple(edges), tuple(values))
            if find_mono_clique(g, witness, s, t) is not None:
                raise VerificationError("lazy search produced an invalid witness")
            elapsed = (time.perf_counter() - start) * 1000.0
            return ArrowVerdict(NOT_ARROWS, witness, nodes, elapsed)
        if candidate > BLUE or (k == 0 and fix_first and candidate > RED):
            k -= 1
            if k < 0:
                elapsed = (time.perf_counter() - start) * 1000.0
                return ArrowVerdict(ARROWS, None, nodes, elapsed)
            u, v = edges[k]
            c = values[k]
            rows_by_color[c][u] &= ~(1 << v)
            rows_by_color[c][v] &= ~(1 << u)
            values[k] = -1
            candidate = c + 1
            continue
        nodes += 1
        if max_nodes and nodes > max_nodes:
            elapsed = (time.perf_counter() - start) * 1000.0
            return ArrowVerdict(UNKNOWN, None, nodes, elapsed)
        if deadline is not None and (nodes & 1023) == 0 and time.perf_counter() > deadline:
            elapsed = (time.perf_counter() - start) * 1000.0
            return ArrowVerdict(UNKNOWN, None, nodes, elapsed)
        u, v = edges[k]
        rows = rows_by_color[candidate]
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        mask = rows[u] & rows[v]
        if next(_iter_clique_bits(rows, mask, close_size[candidate]), None) is not None:
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
            candidate += 1
            continue
        values[k] = candidate
        k += 1
        candidate = RED


def arrows_vertex(
    g: Graph,
    r: int,
    budget: Optional[Budget] = None,
    clique_cap: int = DEFAULT_CLIQUE_CAP,
) -> ArrowVerdict:
    """Decide whether every vertex 2-colouring of g has a colour class with K_r."""
    if r < 2:
        raise ContractViolation("clique target must be at least 2")
    start = time.perf_counter()
    max_nodes, max_ms = (budget or Budget()).kernel_args()

    cliques, truncated = enumerate_cliques(g, r, limit=clique_cap)
    if truncated:
        return _lazy_arrows_vertex(g, r, max_nodes, max_ms, start)

    pols, var_lists = [], []
    for vs in cliques:
        members = vs.members()
        var_lists.append(members)
        pols.append(BLUE)
        var_lists.append(members)
        pols.append(RED)

    counts = [0] * g.n
    for vs in cliques:
        for v in vs:
            counts[v] += 2
    order = sorted(range(g.n), key=lambda v: (-counts[v], v))

    status, assignment, nodes = kernels.solve_two_sided(
        g.n, pols, var_lists, order, True, max_nodes, max_ms
    )
    elapsed = (time.perf_counter() - start) * 1000.0
    if status == kernels.BUDGET:
        return ArrowVerdict(UNKNOWN, None, nodes, elapsed)
    if status == kernels.UNSAT:
        return ArrowVerdict(ARROWS, None, nodes, elapsed)
    witness = VertexColoring(g.n, tuple(assignment))
    if _mono_vertex_class_clique(g, witness, r) is not None:
        raise VerificationError("search produced an invalid vertex-colouring witness")
    return ArrowVerdict(NOT_ARROWS, witness, nodes, elapsed)


def _lazy_arrows_vertex(
    g: Graph, r: int, max_nodes: int, max_ms: float, start: float
) -> ArrowVerdict:
    """Completion-check backtracker over vertices in lexicographic order."""
    n = g.n
    class_bits = [0, 0]
    deadline = start + max_ms / 1000.0 if max_ms else None

    values = [-1] * n
    nodes = 0
    k = 0
    candidate = RED
    while True:
        if k == n:
            witness = VertexColoring(n, tuple(values))
            if _mono_vertex_class_clique(g, witness, r) is not None:
                raise VerificationError("lazy search produced an invalid witness")
            elapsed = (time.perf_counter() - start) * 1000.0
            return ArrowVerdict(NOT_ARROWS, witness, nodes, elapsed)
        if candidate > BLUE or (k == 0 and candidate > RED):
            # first vertex fixed red: the two classes are interchangeable
            k -= 1
            if k < 0:
                elapsed = (time.perf_counter() - start) * 1000.0
                return ArrowVerdict(ARROWS, None, nodes, elapsed)
            c = values[k]
            class_bits[c] &= ~(1 << k)
            values[k] = -1
            candidate = c + 1
            continue
        nodes += 1
        if max_nodes and nodes > max_nodes:
            elapsed = (time.perf_counter() - start) * 1000.0
            return ArrowVerdict(UNKNOWN, None, nodes, elapsed)
        if deadline is not None and (nodes & 1023) == 0 and time.perf_counter() > deadline:
            elapsed = (time.perf_counter() - start) * 1000.0
            return ArrowVerdict(UNKNOWN, None, nodes, elapsed)
        mask = (class_bits[candidate] | (1 << k)) & g.adj[k]
        if next(_iter_clique_bits(g.adj, mask, r - 1), None) is not None:
            candidate += 1
            continue
        class_bits[candidate] |= 1 << k
        values[k] = candidate
        k += 1
        candidate = RED


def export_cnf(g: Graph, s: int, t: int, sink: Union[str, os.PathLike, TextIO]) -> tuple[int, int]:
    """Write a DIMACS CNF whose models are exactly the good colourings.

    Variable ``i + 1`` is true iff edge i (lexicographic) is red; each
    s-clique contributes a "not all red" clause and each t-clique a "not all
    blue" clause, so the formula is satisfiable iff g does not arrow
    ``(K_s, K_t)``.  Returns (variables, clauses).
    """
    if s < 2 or t < 2:
        raise ContractViolation("clique targets must be at least 2")
    if isinstance(sink, (str, os.PathLike)):
        with open(sink, "w", newline="\n") as fh:
            return export_cnf(g, s, t, fh)
    edges = g.edges()
    edge_index = {e: i for i, e in enumerate(edges)}
    clauses: list[list[int]] = []
    for vs in iter_cliques(g, s):
        clauses.append(
            [-(edge_index[e] + 1) for e in combinations(vs.members(), 2)]
        )
    for vs in iter_cliques(g, t):
        clauses.append(
            [edge_index[e] + 1 for e in combinations(vs.members(), 2)]
        )
    sink.write(f"p cnf {len(edges)} {len(clauses)}\n")
    for clause in clauses:
        sink.write(" ".join(str(lit) for lit in clause) + " 0\n")
    return len(edges), len(clauses)
