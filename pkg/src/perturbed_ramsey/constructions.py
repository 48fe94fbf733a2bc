"""Executable adversarial colourings and dependent random choice.

Four construction pipelines live here:

* ``extend_bipartite_coloring`` extends a good colouring of the within-class
  edges of a perturbed bipartite graph by painting every cross edge red,
  which leaves the union without either monochromatic target clique.
* ``drc_extract`` performs dependent random choice: it samples a small set
  of vertices, takes their common neighbourhood, and deletes vertices until
  every small tuple inside has many common neighbours.
* ``mono_clique_via_drc`` turns the dependent-random-choice argument into a
  monochromatic clique finder: find a majority-colour half clique in the
  extracted set, then finish it inside the common neighbourhood.
* ``k4_adversarial_coloring`` builds a three-phase colouring around a
  bipartition that avoids monochromatic 4-cliques whenever its three
  preconditions hold (triangle-avoiding colouring inside one class, a
  4-clique-free vertex split of the other, and no small subgraph of density
  at least 2).

Every success payload is re-verified before it is returned; precondition
failures carry witnesses that can be checked independently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Union

import numpy as np

from .arrowing import (
    ARROWS,
    BLUE,
    RED,
    UNKNOWN,
    Budget,
    EdgeColoring,
    VerificationError,
    find_mono_clique,
    arrows_edge,
    arrows_vertex,
)
from .generators import derive_seed
from .graphcore import (
    ContractViolation,
    Graph,
    PerturbedGraph,
    VertexSet,
    _iter_bits,
    common_neighborhood,
    enumerate_cliques,
    first_clique_within,
    induced,
)


@dataclass(frozen=True)
class Success:
    payload: object


@dataclass(frozen=True)
class PreconditionFailed:
    check: str
    witness: object


@dataclass(frozen=True)
class BudgetExhausted:
    stage: str


ConstructionOutcome = Union[Success, PreconditionFailed, BudgetExhausted]


@dataclass(frozen=True)
class DrcParams:
    """Parameter bundle for dependent random choice.

    ``m`` (required common neighbours) and ``a`` (required output size) stay
    unset in the asymptotic form — they are targets depending on the host
    size; :meth:`with_targets` instantiates them for a concrete n.
    """

    t: int
    alpha: Fraction
    n0: int
    gamma: Fraction
    eps: Fraction
    r: int
    m: Optional[int] = None
    a: Optional[int] = None

    def __post_init__(self) -> None:
        if self.t < 1:
            raise ContractViolation("sample count must be at least 1")
        if not 0 < self.alpha <= 1:
            raise ContractViolation("output fraction must lie in (0, 1]")
        if self.m is not None and self.m < 0:
            raise ContractViolation("required common neighbours must be non-negative")
        if self.a is not None and self.a < 1:
            raise ContractViolation("required output size must be positive")

    def with_targets(self, n: int) -> "DrcParams":
        """Concrete targets for an n-vertex host: m = ceil(n^(1-eps)),
        a = ceil(alpha * n)."""
        q = self.eps.denominator
        p = self.eps.numerator
        if p > q:
            m = 1  # exponent below zero: one neighbour is the sensible floor
        else:
            m = _ceil_root(n ** (q - p), q)
        a = math.ceil(self.alpha * n)
        return DrcParams(self.t, self.alpha, self.n0, self.gamma, self.eps, self.r, m, a)


def _ceil_root(x: int, k: int) -> int:
    """Smallest integer whose k-th power is at least x (x >= 0)."""
    if x <= 1:
        return x
    root = round(x ** (1.0 / k))
    while root**k >= x:
        root -= 1
    while (root + 1) ** k < x:
        root += 1
    return root + 1


def drc_condition(n: int, d: Fraction, t: int, m: int, r: int, a: int) -> bool:
    """Exact test of ``d**t / n**(t-1) - C(n, r) * (m / n)**t >= a``."""
    if n < 1 or t < 1:
        raise ContractViolation("host size and sample count must be positive")
    d = Fraction(d)
    lhs = d**t / Fraction(n) ** (t - 1) - math.comb(n, r) * Fraction(m, n) ** t
    return lhs >= a


def drc_params(gamma, eps, r: int) -> DrcParams:
    """Asymptotic parameter choice: t = ceil(r/eps), alpha = gamma**t / 2,
    n0 = ceil(2 / gamma**t).  Division is rounded up so the guarantee
    direction is preserved."""
    gamma = Fraction(gamma)
    eps = Fraction(eps)
    if gamma <= 0 or eps <= 0:
        raise ContractViolation("gamma and eps must be positive")
    if r < 1:
        raise ContractViolation("tuple size must be positive")
    t = math.ceil(Fraction(r) / eps)
    gpow = gamma**t
    alpha = gpow / 2
    n0 = math.ceil(2 / gpow)
    return DrcParams(t=t, alpha=alpha, n0=n0, gamma=gamma, eps=eps, r=r)


def _common_count(g: Graph, members: tuple[int, ...]) -> int:
    bits = (1 << g.n) - 1
    for v in members:
        bits &= g.adj[v]
    for v in members:
        bits &= ~(1 << v)
    return bits.bit_count()


def _first_deficient_subset(g: Graph, u_bits: int, r: int, m: int):
    """Lexicographically first r-subset of U with < m common neighbours."""
    members = tuple(_iter_bits(u_bits))
    if len(members) < r:
        return None
    for combo in combinations(members, r):
        if _common_count(g, combo) < m:
            return combo
    return None


def verify_common_neighbor_property(g: Graph, vs: VertexSet, r: int, m: int) -> bool:
    """Exhaustively confirm every r-subset of vs has >= m common neighbours."""
    return _first_deficient_subset(g, vs.bits, r, m) is None


def drc_extract(
    g: Graph,
    r: int,
    m: int,
    a: int,
    t: int,
    seed: int,
    max_attempts: int = 50,
) -> ConstructionOutcome:
    """Dependent random choice: find U with |U| >= a whose every r-subset has
    at least m common neighbours in g.

    Each attempt samples t vertices with repetition, starts from their common
    neighbourhood, and repeatedly removes the smallest vertex of the first
    deficient r-subset.  The returned set is re-verified exhaustively.
    """
    if a < r:
        raise ContractViolation("target size must be at least the tuple size")
    if t < 1 or max_attempts < 1:
        raise ContractViolation("sample count and attempts must be positive")
    if g.n == 0:
        return BudgetExhausted("sampling: empty host")
    for attempt in range(max_attempts):
        rng = np.random.Generator(np.random.Philox(key=derive_seed(seed, attempt)))
        sample = [int(v) for v in rng.integers(0, g.n, size=t)]
        bits = (1 << g.n) - 1
        for v in sample:
            bits &= g.adj[v]
        for v in sample:
            bits &= ~(1 << v)
        while True:
            bad = _first_deficient_subset(g, bits, r, m)
            if bad is None:
                break
            bits &= ~(1 << bad[0])
        if bits.bit_count() >= a:
            out = VertexSet(g.n, bits)
            if not verify_common_neighbor_property(g, out, r, m):
                raise VerificationError("dependent random choice returned a bad set")
            return Success(out)
    return BudgetExhausted(f"sampling: {max_attempts} attempts exhausted")


def within_class_graph(pg: PerturbedGraph) -> Graph:
    """The non-cross edges of a partitioned perturbed graph, labels kept."""
    if pg.partition is None:
        raise ContractViolation("graph has no recorded bipartition")
    g = pg.graph
    v1 = pg.partition[0].bits
    rows = []
    for v in range(g.n):
        side = v1 if (v1 >> v) & 1 else ~v1
        rows.append(g.adj[v] & side)
    return Graph(g.n, tuple(rows))


def extend_bipartite_coloring(
    pg: PerturbedGraph, inner: EdgeColoring, ell: int, r: int
) -> ConstructionOutcome:
    """Extend a within-class colouring by painting all cross edges red.

    ``inner`` must colour exactly the non-cross edges and avoid both a red
    ell-clique and a blue r-clique; the extension then has no monochromatic
    r-clique: blue edges only exist inside the classes, and a red r-clique
    would put ell = ceil(r/2) vertices inside one class, forming a red
    ell-clique of ``inner``.  The full colouring is verified anyway.
    """
    within = within_class_graph(pg)
    if inner.n != pg.graph.n or inner.edges != tuple(within.edges()):
        raise ContractViolation("inner colouring must cover exactly the non-cross edges")
    hit = find_mono_clique(within, inner, ell, r)
    if hit is not None:
        color, clique = hit
        name = "red" if color == RED else "blue"
        return PreconditionFailed(f"inner colouring admits a {name} clique", (color, clique))
    colors = []
    for u, v in pg.graph.edges():
        colors.append(RED if pg.is_cross(u, v) else inner.color_of(u, v))
    full = EdgeColoring.for_graph(pg.graph, colors)
    if find_mono_clique(pg.graph, full, r, r) is not None:
        raise VerificationError("cross-red extension admitted a monochromatic clique")
    return Success(full)


def _fallback_scan(
    g: Graph, coloring: EdgeColoring, r: int, limit: int
) -> Union[Success, BudgetExhausted, None]:
    """Exhaustive monochromatic r-clique scan, in clique order."""
    cliques, truncated = enumerate_cliques(g, r, limit=limit)
    for vs in cliques:
        members = vs.members()
        colors = {coloring.color_of(u, v) for u, v in combinations(members, 2)}
        if len(colors) == 1:
            return Success((colors.pop(), vs))
    if truncated:
        return BudgetExhausted("fallback scan truncated")
    return None


def mono_clique_via_drc(
    g: Graph,
    coloring: EdgeColoring,
    r: int,
    u_floor: int,
    w_floor: int,
    t: int,
    seed: int,
    max_attempts: int = 50,
    scan_limit: int = 1_000_000,
) -> ConstructionOutcome:
    """Find a monochromatic r-clique via dependent random choice.

    Majority colour first: extract U in the majority subgraph so every
    r-subset of U has >= w_floor common majority neighbours, find a majority
    ceil(r/2)-clique X in U (or a minority r-clique and stop), then repeat
    inside the common majority neighbourhood of X for the floor(r/2) half.
    If any stage fails, an exhaustive scan over all r-cliques runs before a
    failure is reported, so a monochromatic copy is never missed while the
    host still fits the scan limit.
    """
    if u_floor < math.ceil(r / 2) or w_floor < r // 2:
        raise ContractViolation("floors must cover the two half-clique sizes")
    if coloring.n != g.n or coloring.edges != tuple(g.edges()):
        raise ContractViolation("colouring does not match the host graph")

    def finish(failure: ConstructionOutcome) -> ConstructionOutcome:
        scanned = _fallback_scan(g, coloring, r, scan_limit)
        if isinstance(scanned, Success):
            color, vs = scanned.payload
            _verify_mono_clique(g, coloring, vs, r, color)
            return scanned
        return failure

    maj = RED if coloring.count(RED) >= coloring.count(BLUE) else BLUE
    mino = BLUE if maj == RED else RED
    g_maj = coloring.monochromatic_subgraph(maj)
    g_min = coloring.monochromatic_subgraph(mino)

    # the extracted set must fit whole r-subsets for its guarantee to bite
    extracted = drc_extract(g_maj, r, w_floor, max(u_floor, r), t, seed, max_attempts)
    if isinstance(extracted, BudgetExhausted):
        return finish(extracted)
    assert isinstance(extracted, Success)
    u_set: VertexSet = extracted.payload

    def half_step(region: VertexSet, half: int) -> tuple[Optional[VertexSet], Optional[ConstructionOutcome]]:
        x = first_clique_within(g_maj, region, half)
        if x is not None:
            return x, None
        opposite = first_clique_within(g_min, region, r)
        if opposite is not None:
            _verify_mono_clique(g, coloring, opposite, r, mino)
            return None, Success((mino, opposite))
        sub, relabel = induced(g, region)
        restricted = EdgeColoring.for_graph(
            sub, [coloring.color_of(relabel[a], relabel[b]) for a, b in sub.edges()]
        )
        return None, PreconditionFailed(
            "subset admits neither half-clique nor full minority clique",
            (region, restricted),
        )

    x_set, early = half_step(u_set, math.ceil(r / 2))
    if early is not None:
        return finish(early) if isinstance(early, PreconditionFailed) else early
    assert x_set is not None
    w_region = common_neighborhood(g_maj, x_set)
    y_set, early = half_step(w_region, r // 2)
    if early is not None:
        return finish(early) if isinstance(early, PreconditionFailed) else early
    assert y_set is not None

    result = VertexSet(g.n, x_set.bits | y_set.bits)
    _verify_mono_clique(g, coloring, result, r, maj)
    return Success((maj, result))


def _verify_mono_clique(
    g: Graph, coloring: EdgeColoring, vs: VertexSet, r: int, color: int
) -> None:
    members = vs.members()
    if len(members) != r:
        raise VerificationError(f"result has {len(members)} vertices, expected {r}")
    for u, v in combinations(members, 2):
        if not g.has_edge(u, v):
            raise VerificationError(f"result misses edge ({u}, {v})")
        if coloring.color_of(u, v) != color:
            raise VerificationError(f"result edge ({u}, {v}) has the wrong colour")


def _iter_connected_sets(g: Graph, vmax: int):
    """All connected vertex sets of size <= vmax, each exactly once.

    Sets are rooted at their minimum vertex and grown by appending larger
    neighbours; a vertex may only enter the extension set the first time it
    becomes reachable, which makes every set appear exactly once and fixes
    the enumeration order.
    """
    for root in range(g.n):
        above = ~((1 << (root + 1)) - 1)
        start = 1 << root

        def grow(bits: int, ext: int, seen: int):
            yield bits
            if bits.bit_count() == vmax:
                return
            remaining = ext
            while remaining:
                low = remaining & -remaining
                remaining ^= low
                v = low.bit_length() - 1
                fresh = g.adj[v] & above & ~seen
                yield from grow(bits | low, remaining | fresh, seen | fresh)

        first = g.adj[root] & above
        yield from grow(start, first, start | first)


def check_no_dense_small_subgraph(
    g: Graph, vmax: int = 8, rho_min=Fraction(2)
) -> Optional[VertexSet]:
    """Witness vertex set S with |S| <= vmax and density e(S)/|S| >= rho_min,
    or None if no such subgraph exists.

    Only connected candidate sets are grown: a densest small subgraph can
    always be taken connected, since some component of a dense set is at
    least as dense as the whole.
    """
    rho_min = Fraction(rho_min)
    for bits in _iter_connected_sets(g, vmax):
        size = bits.bit_count()
        edges = 0
        rest = bits
        while rest:
            low = rest & -rest
            rest ^= low
            v = low.bit_length() - 1
            edges += (g.adj[v] & rest).bit_count()
        if Fraction(edges) >= rho_min * size:
            return VertexSet(g.n, bits)
    return None


def k4_adversarial_coloring(
    pg: PerturbedGraph,
    budget: Optional[Budget] = None,
    dense_vmax: int = 8,
    dense_rho_min=Fraction(2),
) -> ConstructionOutcome:
    """Three-phase colouring of a partitioned perturbed graph with no
    monochromatic 4-clique.

    Preconditions, each verified with a witness: (a) the edges inside the
    first class admit a colouring without monochromatic triangles, (b) the
    second class has a vertex 2-colouring without a monochromatic 4-clique
    (its red class becomes U), and (c) the second class has no subgraph on
    <= ``dense_vmax`` vertices of density >= ``dense_rho_min``.  One edge of
    every 4-clique of the second class incident to its smallest U-vertex is
    forced red; edges inside U are red, other second-class edges blue; cross
    edges are blue exactly into U.
    """
    if pg.partition is None:
        raise ContractViolation("construction requires a bipartition")
    g = pg.graph
    v1, v2 = pg.partition

    g1, map1 = induced(g, v1)
    verdict1 = arrows_edge(g1, 3, 3, budget)
    if verdict1.kind == ARROWS:
        return PreconditionFailed("first class arrows a monochromatic triangle", verdict1)
    if verdict1.kind == UNKNOWN:
        return BudgetExhausted("triangle-avoiding colouring of the first class")
    phi1 = verdict1.witness
    assert isinstance(phi1, EdgeColoring)

    g2, map2 = induced(g, v2)
    verdict2 = arrows_vertex(g2, 4, budget)
    if verdict2.kind == ARROWS:
        return PreconditionFailed("second class vertex-arrows a 4-clique", verdict2)
    if verdict2.kind == UNKNOWN:
        return BudgetExhausted("4-clique-free vertex split of the second class")
    psi = verdict2.witness
    u_bits = 0
    for i, c in enumerate(psi.colors):
        if c == RED:
            u_bits |= 1 << map2[i]

    dense = check_no_dense_small_subgraph(g2, dense_vmax, dense_rho_min)
    if dense is not None:
        witness = VertexSet(g.n, sum(1 << map2[i] for i in dense))
        return PreconditionFailed("second class contains a small dense subgraph", witness)

    cliques2, _ = enumerate_cliques(g2, 4)
    forced: set[tuple[int, int]] = set()
    for vs in cliques2:
        members = [map2[i] for i in vs]
        in_u = [v for v in members if (u_bits >> v) & 1]
        if not in_u:
            raise VerificationError("4-clique avoids U despite the verified vertex split")
        a_l = min(in_u)
        candidates = sorted(
            (min(a_l, w), max(a_l, w)) for w in members if w != a_l
        )
        forced.add(candidates[0])

    phi1_by_edge = {
        (map1[a], map1[b]) if map1[a] < map1[b] else (map1[b], map1[a]): c
        for (a, b), c in zip(phi1.edges, phi1.colors)
    }
    colors = []
    for u, v in g.edges():
        u_in1 = u in v1
        v_in1 = v in v1
        if u_in1 and v_in1:
            colors.append(phi1_by_edge[(u, v)])
        elif not u_in1 and not v_in1:
            both_u = ((u_bits >> u) & 1) and ((u_bits >> v) & 1)
            colors.append(RED if both_u or (u, v) in forced else BLUE)
        else:
            inner = v if u_in1 else u
            colors.append(BLUE if (u_bits >> inner) & 1 else RED)
    full = EdgeColoring.for_graph(g, colors)
    if find_mono_clique(g, full, 4, 4) is not None:
        raise VerificationError("three-phase colouring admitted a monochromatic 4-clique")
    return Success(full)
