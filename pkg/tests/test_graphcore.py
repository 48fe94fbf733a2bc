import io
import math
import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from perturbed_ramsey.graphcore import (
    ContractViolation,
    Graph,
    VertexSet,
    common_neighborhood,
    contains_clique,
    enumerate_cliques,
    first_clique_within,
    induced,
    is_gamma_dense,
    read_graph,
    union,
    write_graph,
)

from conftest import oracle_common_neighbors, random_graph


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(min_value=0, max_value=max_n))
    pairs = list(combinations(range(n), 2))
    if not pairs:
        return Graph.empty(n)
    edges = draw(st.lists(st.sampled_from(pairs), unique=True))
    return Graph.from_edges(n, edges)


class TestGraphInvariants:
    def test_rejects_asymmetric_rows(self):
        with pytest.raises(ContractViolation):
            Graph(2, (0b10, 0b00))

    def test_rejects_loops(self):
        with pytest.raises(ContractViolation):
            Graph(1, (0b1,))
        with pytest.raises(ContractViolation):
            Graph.from_edges(3, [(1, 1)])

    def test_rejects_out_of_range_bits(self):
        with pytest.raises(ContractViolation):
            Graph(2, (0b100, 0))

    def test_edge_count(self):
        assert Graph.complete(5).m == 10
        assert Graph.empty(7).m == 0
        assert cycle(5).m == 5

    def test_edges_lexicographic(self):
        g = Graph.from_edges(4, [(2, 3), (0, 2), (0, 1)])
        assert g.edges() == [(0, 1), (0, 2), (2, 3)]


class TestUnion:
    def test_empty_identity(self):
        k5 = Graph.complete(5)
        assert union(Graph.empty(5), k5) == k5

    def test_idempotent(self):
        g = cycle(6)
        assert union(g, g) == g

    def test_bipartite_plus_edge_creates_triangle(self):
        # K_{2,2} on {0,1} | {2,3} plus the edge {0,1}
        g = union(bipartite(2, 2), Graph.from_edges(4, [(0, 1)]))
        assert g.m == 5
        assert g.has_edge(0, 1) and g.has_edge(0, 2) and g.has_edge(1, 2)
        assert contains_clique(g, 3)

    def test_size_mismatch(self):
        with pytest.raises(ContractViolation):
            union(Graph.empty(3), Graph.empty(4))

    @given(graphs(max_n=6), graphs(max_n=6))
    def test_commutative_associative(self, g1, g2):
        if g1.n != g2.n:
            return
        assert union(g1, g2) == union(g2, g1)
        assert union(union(g1, g2), g1) == union(g1, union(g2, g1))


class TestInduced:
    def test_clique_heredity(self):
        sub, relabel = induced(Graph.complete(6), VertexSet.of(6, [0, 1, 2]))
        assert sub == Graph.complete(3)
        assert relabel == (0, 1, 2)

    def test_cycle_subset(self):
        sub, relabel = induced(cycle(5), VertexSet.of(5, [0, 1, 3]))
        assert sub.edges() == [(0, 1)]
        assert relabel == (0, 1, 3)

    def test_identity(self):
        g = cycle(7)
        sub, relabel = induced(g, g.all_vertices())
        assert sub == g
        assert relabel == tuple(range(7))

    @given(graphs(max_n=8), st.integers(min_value=0, max_value=255))
    def test_edge_count_matches_naive_double_loop(self, g, seed):
        rng = random.Random(seed)
        members = [v for v in range(g.n) if rng.random() < 0.5]
        sub, relabel = induced(g, VertexSet.of(g.n, members))
        naive = sum(
            1 for u, v in combinations(members, 2) if g.has_edge(u, v)
        )
        assert sub.m == naive
        # edges map back onto host edges
        for a, b in sub.edges():
            assert g.has_edge(relabel[a], relabel[b])


class TestCommonNeighborhood:
    def test_complete(self):
        out = common_neighborhood(Graph.complete(5), VertexSet.of(5, [0, 1]))
        assert out.members() == (2, 3, 4)

    def test_bipartite_same_side(self):
        out = common_neighborhood(bipartite(3, 3), VertexSet.of(6, [0, 1]))
        assert out.members() == (3, 4, 5)

    def test_cycle(self):
        out = common_neighborhood(cycle(5), VertexSet.of(5, [0, 2]))
        assert out.members() == (1,)

    def test_empty_set_rejected(self):
        with pytest.raises(ContractViolation):
            common_neighborhood(cycle(5), VertexSet(5, 0))

    @given(graphs(max_n=8))
    def test_singleton_is_adjacency_row(self, g):
        for v in range(g.n):
            out = common_neighborhood(g, VertexSet.of(g.n, [v]))
            assert out.bits == g.adj[v] & ~(1 << v)

    @given(graphs(max_n=7), st.integers(min_value=0, max_value=999))
    def test_matches_oracle(self, g, seed):
        rng = random.Random(seed)
        if g.n == 0:
            return
        k = rng.randint(1, g.n)
        members = tuple(sorted(rng.sample(range(g.n), k)))
        out = common_neighborhood(g, VertexSet.of(g.n, members))
        assert set(out.members()) == oracle_common_neighbors(g, members)


class TestCliques:
    def test_k4_full(self):
        cliques, truncated = enumerate_cliques(Graph.complete(4), 4)
        assert [c.members() for c in cliques] == [(0, 1, 2, 3)]
        assert not truncated

    def test_k5_triangles(self):
        cliques, _ = enumerate_cliques(Graph.complete(5), 3)
        assert len(cliques) == 10
        listed = [c.members() for c in cliques]
        assert listed == sorted(listed)  # lexicographic order

    def test_cycle_triangle_free(self):
        cliques, _ = enumerate_cliques(cycle(5), 3)
        assert cliques == []

    @pytest.mark.parametrize("n", [4, 6, 9, 12])
    def test_complete_graph_counts(self, n):
        g = Graph.complete(n)
        for r in range(1, n + 1):
            cliques, _ = enumerate_cliques(g, r)
            assert len(cliques) == math.comb(n, r)

    def test_truncation_flag(self):
        cliques, truncated = enumerate_cliques(Graph.complete(6), 3, limit=5)
        assert len(cliques) == 5 and truncated
        cliques, truncated = enumerate_cliques(Graph.complete(6), 3, limit=20)
        assert len(cliques) == 20 and not truncated

    def test_contains_examples(self):
        assert not contains_clique(bipartite(50, 50), 3)
        k6_minus = Graph.from_edges(
            6, [e for e in combinations(range(6), 2) if e != (0, 1)]
        )
        assert contains_clique(k6_minus, 5)
        assert not contains_clique(Graph.empty(10), 2)

    @given(graphs(max_n=7), st.integers(min_value=1, max_value=5))
    def test_contains_iff_enumeration_nonempty(self, g, r):
        cliques, _ = enumerate_cliques(g, r)
        assert contains_clique(g, r) == bool(cliques)
        for c in cliques:
            members = c.members()
            assert len(members) == r
            assert all(g.has_edge(u, v) for u, v in combinations(members, 2))

    def test_first_clique_within(self):
        g = Graph.complete(6)
        hit = first_clique_within(g, VertexSet.of(6, [2, 3, 5]), 3)
        assert hit is not None and hit.members() == (2, 3, 5)
        assert first_clique_within(cycle(5), VertexSet(5, 0b11111), 3) is None


class TestGammaDense:
    def test_balanced_bipartite(self):
        assert is_gamma_dense(bipartite(50, 50), Fraction(1, 5))

    def test_sparse(self):
        assert not is_gamma_dense(Graph.empty(10), Fraction(1, 100))

    def test_zero_gamma(self):
        assert is_gamma_dense(Graph.empty(3), 0)

    def test_exact_boundary(self):
        # 2500 >= (1/4) * 100^2 exactly
        assert is_gamma_dense(bipartite(50, 50), Fraction(1, 4))
        assert not is_gamma_dense(bipartite(50, 50), Fraction(1, 4) + Fraction(1, 10**9))


class TestTextFormat:
    def test_round_trip_canonical(self, tmp_path):
        g = random_graph(random.Random(5), 9, 0.4)
        path = tmp_path / "g.txt"
        write_graph(g, path)
        assert read_graph(path) == g
        # canonical bytes: rewriting the parsed graph is byte-identical
        again = tmp_path / "h.txt"
        write_graph(read_graph(path), again)
        assert path.read_bytes() == again.read_bytes()

    def test_comments_and_order_tolerated(self):
        text = "# a comment\n3 2\n1 2\n0 1 # trailing\n"
        g = read_graph(io.StringIO(text))
        assert g.edges() == [(0, 1), (1, 2)]

    def test_bad_edge_rejected(self):
        with pytest.raises(ContractViolation):
            read_graph(io.StringIO("3 1\n2 1\n"))
        with pytest.raises(ContractViolation):
            read_graph(io.StringIO("3 2\n0 1\n"))

    def test_vertex_set_validation(self):
        with pytest.raises(ContractViolation):
            VertexSet(3, 0b1000)
        with pytest.raises(ContractViolation):
            VertexSet.of(3, [3])
