import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from perturbed_ramsey.densities import (
    UnsupportedSize,
    d2,
    d2_asym,
    m2,
    m2_asym,
    m2_clique_closed_form,
    rho,
)
from perturbed_ramsey.graphcore import ContractViolation, Graph, VertexSet, induced

from conftest import random_graph


def cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def oracle_d2(v: int, e: int) -> Fraction:
    if e == 0:
        return Fraction(0)
    if v == 2 and e == 1:
        return Fraction(1, 2)
    return Fraction(e - 1, v - 2)


def oracle_m2(g: Graph) -> Fraction:
    """Max 2-density over ALL subgraphs: every vertex subset and every
    possible edge count within it."""
    best = Fraction(0)
    for k in range(g.n + 1):
        for vs in combinations(range(g.n), k):
            inside = sum(1 for u, v in combinations(vs, 2) if g.has_edge(u, v))
            for e in range(inside + 1):
                val = oracle_d2(k, e)
                if val > best:
                    best = val
    return best


def oracle_m2_asym(g: Graph, h: Graph) -> Fraction:
    inv = 1 / oracle_m2(g)
    best = None
    for k in range(h.n + 1):
        for vs in combinations(range(h.n), k):
            inside = sum(1 for u, v in combinations(vs, 2) if h.has_edge(u, v))
            for e in range(1, inside + 1):
                val = e / (k - 2 + inv)
                if best is None or val > best:
                    best = val
    assert best is not None
    return best


class TestRho:
    def test_examples(self):
        assert rho(Graph.complete(4)) == Fraction(3, 2)
        assert rho(Graph.complete(5)) == 2
        assert rho(cycle(5)) == 1

    def test_empty_vertex_set(self):
        with pytest.raises(ContractViolation):
            rho(Graph.empty(0))


class TestD2:
    def test_main_case(self):
        assert d2(Graph.complete(4)) == Fraction(5, 2)

    def test_single_edge(self):
        assert d2(Graph.complete(2)) == Fraction(1, 2)

    def test_edgeless(self):
        assert d2(Graph.empty(7)) == 0

    def test_edge_plus_isolated_vertices(self):
        g = Graph.from_edges(5, [(0, 1)])
        assert d2(g) == 0  # (1-1)/(5-2)


class TestM2:
    def test_cliques(self):
        assert m2(Graph.complete(5)) == 3
        assert m2(Graph.complete(3)) == 2

    def test_clique_closed_value_range(self):
        for l in range(3, 11):
            assert m2(Graph.complete(l)) == Fraction(l + 1, 2)

    def test_cycle_by_oracle(self):
        g = cycle(5)
        assert oracle_m2(g) == Fraction(4, 3)
        assert m2(g) == Fraction(4, 3)

    def test_size_cap(self):
        with pytest.raises(UnsupportedSize):
            m2(Graph.empty(17))

    @settings(max_examples=40, deadline=None)
    @given(st.integers(min_value=0, max_value=10**6))
    def test_agrees_with_all_subgraph_oracle(self, seed):
        rng = random.Random(seed)
        g = random_graph(rng, rng.randint(0, 6), rng.random())
        assert m2(g) == oracle_m2(g)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(min_value=0, max_value=10**6))
    def test_monotone_under_induced_subgraphs(self, seed):
        rng = random.Random(seed)
        g = random_graph(rng, rng.randint(1, 8), rng.random())
        members = [v for v in range(g.n) if rng.random() < 0.6]
        sub, _ = induced(g, VertexSet.of(g.n, members))
        assert m2(sub) <= m2(g)


class TestAsymmetric:
    def test_d2_examples(self):
        assert d2_asym(Graph.complete(3), Graph.complete(4)) == Fraction(12, 5)
        assert d2_asym(Graph.complete(2), Graph.complete(5)) == 2
        assert d2_asym(Graph.complete(3), Graph.complete(3)) == 2

    def test_m2_examples(self):
        assert m2_asym(Graph.complete(3), Graph.complete(5)) == Fraction(20, 7)
        assert m2_asym(Graph.complete(2), Graph.complete(5)) == 2
        assert m2_asym(Graph.complete(3), Graph.complete(3)) == 2

    def test_edgeless_rejected(self):
        with pytest.raises(ContractViolation):
            d2_asym(Graph.empty(3), Graph.complete(3))
        with pytest.raises(ContractViolation):
            m2_asym(Graph.complete(3), Graph.empty(3))

    @settings(max_examples=25, deadline=None)
    @given(st.integers(min_value=0, max_value=10**6))
    def test_agrees_with_all_subgraph_oracle(self, seed):
        rng = random.Random(seed)
        while True:
            g = random_graph(rng, rng.randint(2, 5), 0.7)
            if g.m:
                break
        while True:
            h = random_graph(rng, rng.randint(2, 6), 0.6)
            if h.m:
                break
        assert m2_asym(g, h) == oracle_m2_asym(g, h)


class TestClosedForm:
    def test_values(self):
        assert m2_clique_closed_form(3, 5) == Fraction(20, 7)
        assert m2_clique_closed_form(3, 4) == Fraction(12, 5)
        assert m2_clique_closed_form(4, 7) == Fraction(35, 9)

    def test_domain(self):
        with pytest.raises(ContractViolation):
            m2_clique_closed_form(2, 5)
        with pytest.raises(ContractViolation):
            m2_clique_closed_form(5, 4)

    def test_matches_brute_force_on_all_clique_pairs(self):
        for l in range(3, 10):
            for r in range(l, 10):
                assert m2_clique_closed_form(l, r) == m2_asym(
                    Graph.complete(l), Graph.complete(r)
                )

    def test_odd_half_clique_strict_inequality(self):
        # for odd r the (r+1)/2 side strictly dominates the (r-1)/2 side;
        # the left argument 2 must go through the brute force, not the
        # closed form
        for r in (5, 7, 9):
            upper = m2_clique_closed_form((r + 1) // 2, r)
            l = (r - 1) // 2
            if l >= 3:
                lower = m2_asym(Graph.complete(l), Graph.complete(r))
                assert lower == m2_clique_closed_form(l, r)
            else:
                lower = m2_asym(Graph.complete(2), Graph.complete(r))
            assert upper > lower


class TestExponentInequalities:
    def test_general_even_form(self):
        # (1 - 1/8) * (r - (r - 2 + 2/(ceil(r/2) + 1))) >= 5/4, exactly
        eps = Fraction(1, 8)
        for r in range(5, 12):
            gap = r - (r - 2 + Fraction(2, (r + 1) // 2 + 1))
            assert (1 - eps) * gap >= Fraction(5, 4)

    def test_odd_form(self):
        # (1 - 1/(4r)) * r - (r - 2 + 2/((r+1)/2 + 1)) >= 5/4, exactly
        for r in (5, 7, 9, 11):
            eps = Fraction(1, 4 * r)
            lhs = (1 - eps) * r - (r - 2 + Fraction(2, (r + 1) // 2 + 1))
            assert lhs >= Fraction(5, 4)
