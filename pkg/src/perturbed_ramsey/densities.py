"""Exact rational density parameters of graphs.

Everything here returns :class:`fractions.Fraction`; no floating point is
used anywhere in this module, so comparisons between brute-force maximizers
and closed forms are exact.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .graphcore import ContractViolation, Graph

#: Brute-force maximizers enumerate all vertex subsets, so graphs are capped.
MAX_BRUTE_FORCE_VERTICES = 16


class UnsupportedSize(ContractViolation):
    """Graph too large for the subset brute force."""


def rho(h: Graph) -> Fraction:
    """Density ``|E| / |V|``."""
    if h.n < 1:
        raise ContractViolation("density of the empty vertex set is undefined")
    return Fraction(h.m, h.n)


def d2(h: Graph) -> Fraction:
    """2-density: ``(|E|-1)/(|V|-2)`` for |V| >= 3 with an edge, 1/2 for a
    single edge on two vertices, 0 for edgeless graphs."""
    if h.m == 0:
        return Fraction(0)
    if h.n == 2:
        return Fraction(1, 2)
    # A simple graph with an edge has at least 2 vertices.
    assert h.n >= 3
    return Fraction(h.m - 1, h.n - 2)


def _subset_edge_counts(h: Graph) -> list[int]:
    """Induced edge count for every vertex subset, indexed by bitmask.

    Uses the recurrence e(S) = e(S \\ {v}) + deg_S(v) with v the lowest bit.
    """
    counts = [0] * (1 << h.n)
    for s in range(1, 1 << h.n):
        low = s & -s
        v = low.bit_length() - 1
        rest = s ^ low
        counts[s] = counts[rest] + (h.adj[v] & rest).bit_count()
    return counts


def _d2_of_counts(k: int, e: int) -> Fraction:
    if e == 0:
        return Fraction(0)
    if k == 2:
        return Fraction(1, 2)
    return Fraction(e - 1, k - 2)


def m2(h: Graph) -> Fraction:
    """Maximum 2-density over all subgraphs.

    It suffices to scan induced subgraphs: for a fixed vertex set the
    2-density is maximized by keeping every edge, and dropping isolated
    vertices never decreases it.
    """
    if h.n > MAX_BRUTE_FORCE_VERTICES:
        raise UnsupportedSize(f"brute force capped at {MAX_BRUTE_FORCE_VERTICES} vertices")
    best = Fraction(0)
    for s, e in enumerate(_subset_edge_counts(h)):
        if e == 0:
            continue
        val = _d2_of_counts(s.bit_count(), e)
        if val > best:
            best = val
    return best


def d2_asym(g: Graph, h: Graph) -> Fraction:
    """Asymmetric 2-density ``|E(h)| / (|V(h)| - 2 + 1/m2(g))``."""
    if g.m == 0 or h.m == 0:
        raise ContractViolation("asymmetric 2-density requires both graphs to have an edge")
    if h.n < 2:
        raise ContractViolation("right-hand graph needs at least 2 vertices")
    return Fraction(h.m) / (h.n - 2 + 1 / m2(g))


def m2_asym(g: Graph, h: Graph) -> Fraction:
    """Maximum of the asymmetric 2-density over subgraphs of ``h`` with an edge.

    The same induced-subgraph scan as :func:`m2` is sufficient, for the same
    monotonicity reasons.
    """
    if g.m == 0 or h.m == 0:
        raise ContractViolation("asymmetric 2-density requires both graphs to have an edge")
    if h.n > MAX_BRUTE_FORCE_VERTICES:
        raise UnsupportedSize(f"brute force capped at {MAX_BRUTE_FORCE_VERTICES} vertices")
    inv = 1 / m2(g)
    best = None
    for s, e in enumerate(_subset_edge_counts(h)):
        if e == 0:
            continue
        val = e / (s.bit_count() - 2 + inv)
        if best is None or val > best:
            best = val
    assert best is not None
    return best


def m2_clique_closed_form(l: int, r: int) -> Fraction:
    """Asymmetric 2-density of a clique pair ``(K_l, K_r)`` in closed form:
    ``C(r,2) * (l+1) / ((r-2)*(l+1) + 2)``.

    Valid only for ``3 <= l <= r``: the derivation substitutes the l-clique's
    2-density ``(l+1)/2``, which fails below ``l = 3``.
    """
    if not 3 <= l <= r:
        raise ContractViolation(f"closed form needs 3 <= l <= r, got ({l}, {r})")
    return Fraction(math.comb(r, 2) * (l + 1), (r - 2) * (l + 1) + 2)
