"""Pure-Python two-sided clause search kernel.

The search decides satisfiability of a conjunction of "not all variables in
this set take colour X" constraints, which is the engine behind both edge
and vertex arrowing: clause c is satisfied once some member variable is
assigned ``pols[c]``.

The engine is a conflict-driven clause-learning search: branching follows a
caller-fixed static variable order with value 0 (red) tried first, unit
propagation runs over watched literals, and every conflict is analyzed to
its first unique implication point, learning a clause and backjumping.  No
restarts and no randomness, so runs are exactly reproducible; the compiled
kernel in ``_kernels.pyx`` implements the identical algorithm, so verdicts,
witnesses and node counts agree bit for bit between backends.

Literal encoding: ``2*var + value``; a literal is true iff its variable is
assigned its value.  Watch lists are singly-linked lists over a node arena
with head insertion and a free list, which both backends reproduce exactly.
"""

from __future__ import annotations

import time

RED = 0
BLUE = 1

UNSAT = 0
SAT = 1
BUDGET = 2

BACKEND = "python"


def solve_two_sided(
    num_vars: int,
    clause_pols: list[int],
    clause_vars: list[tuple[int, ...]],
    order: list[int],
    fix_first: bool,
    max_nodes: int = 0,
    max_ms: float = 0.0,
):
    """Search for an assignment satisfying every clause.

    Returns ``(status, assignment, nodes)`` with status UNSAT / SAT / BUDGET;
    the assignment is a 0/1 list when SAT, else None; ``nodes`` counts
    decisions.  ``max_nodes`` and ``max_ms`` of 0 mean unlimited.  When
    ``fix_first`` is set, the first variable in ``order`` is pinned to 0
    (sound when the clause system is symmetric under swapping 0 and 1).
    """
    values = [-1] * num_vars
    level = [0] * num_vars
    reason = [-1] * num_vars
    seen = [False] * num_vars

    # flat clause arena
    cl_off: list[int] = []
    cl_len: list[int] = []
    lit_data: list[int] = []

    # watch lists: singly linked over (wl_clause, wl_next), head insertion
    w_head = [-1] * (2 * num_vars)
    wl_clause: list[int] = []
    wl_next: list[int] = []
    free_head = -1

    def watch_add(lit: int, c: int) -> None:
        nonlocal free_head
        if free_head != -1:
            node = free_head
            free_head = wl_next[node]
            wl_clause[node] = c
            wl_next[node] = w_head[lit]
        else:
            node = len(wl_clause)
            wl_clause.append(c)
            wl_next.append(w_head[lit])
        w_head[lit] = node

    def add_clause(lits: list[int]) -> int:
        c = len(cl_off)
        cl_off.append(len(lit_data))
        cl_len.append(len(lits))
        lit_data.extend(lits)
        watch_add(lits[0], c)
        watch_add(lits[1], c)
        return c

    trail: list[int] = []
    trail_lim: list[int] = []
    pos_lim: list[int] = []
    qhead = 0
    search_from = 0

    def enqueue(lit: int, rsn: int) -> None:
        var = lit >> 1
        values[var] = lit & 1
        level[var] = len(trail_lim)
        reason[var] = rsn
        trail.append(lit)

    def lit_value(lit: int) -> int:
        # -1 unassigned, 1 true, 0 false
        v = values[lit >> 1]
        if v == -1:
            return -1
        return 1 if v == (lit & 1) else 0

    units: list[int] = []
    if fix_first and num_vars > 0:
        units.append(2 * order[0] + RED)
    for pol, vars_ in zip(clause_pols, clause_vars):
        k = len(vars_)
        if k == 0:
            return UNSAT, None, 0
        lits = [2 * v + pol for v in vars_]
        if k == 1:
            units.append(lits[0])
        else:
            add_clause(lits)
    for lit in units:
        v = lit_value(lit)
        if v == 0:
            return UNSAT, None, 0
        if v == -1:
            enqueue(lit, -1)

    def propagate() -> int:
        nonlocal qhead, free_head
        while qhead < len(trail):
            lit = trail[qhead]
            qhead += 1
            flit = lit ^ 1
            prev = -1
            node = w_head[flit]
            while node != -1:
                nxt = wl_next[node]
                c = wl_clause[node]
                off = cl_off[c]
                if lit_data[off] == flit:
                    lit_data[off] = lit_data[off + 1]
                    lit_data[off + 1] = flit
                w0 = lit_data[off]
                v0 = lit_value(w0)
                if v0 == 1:
                    prev = node
                    node = nxt
                    continue
                found = -1
                end = off + cl_len[c]
                for k in range(off + 2, end):
                    if lit_value(lit_data[k]) != 0:
                        found = k
                        break
                if found != -1:
                    moved = lit_data[found]
                    lit_data[found] = lit_data[off + 1]
                    lit_data[off + 1] = moved
                    # unlink node from this list, push onto the new literal's
                    if prev == -1:
                        w_head[flit] = nxt
                    else:
                        wl_next[prev] = nxt
                    wl_next[node] = w_head[moved]
                    w_head[moved] = node
                    node = nxt
                    continue
                if v0 == 0:
                    return c
                enqueue(w0, c)
                prev = node
                node = nxt
        return -1

    def analyze(confl: int) -> tuple[list[int], int]:
        learnt = [0]
        to_clear: list[int] = []
        counter = 0
        p = -1
        index = len(trail) - 1
        cur_level = len(trail_lim)
        c = confl
        while True:
            off = cl_off[c]
            start = off if p == -1 else off + 1
            for k in range(start, off + cl_len[c]):
                q = lit_data[k]
                v = q >> 1
                if not seen[v] and level[v] > 0:
                    seen[v] = True
                    to_clear.append(v)
                    if level[v] == cur_level:
                        counter += 1
                    else:
                        learnt.append(q)
            while not seen[trail[index] >> 1]:
                index -= 1
            p = trail[index]
            index -= 1
            counter -= 1
            if counter == 0:
                break
            c = reason[p >> 1]
        learnt[0] = p ^ 1
        if len(learnt) == 1:
            blevel = 0
        else:
            max_i = 1
            for k in range(2, len(learnt)):
                if level[learnt[k] >> 1] > level[learnt[max_i] >> 1]:
                    max_i = k
            learnt[1], learnt[max_i] = learnt[max_i], learnt[1]
            blevel = level[learnt[1] >> 1]
        for v in to_clear:
            seen[v] = False
        return learnt, blevel

    def cancel_until(blevel: int) -> None:
        nonlocal qhead, search_from
        if len(trail_lim) <= blevel:
            return
        target = trail_lim[blevel]
        for k in range(len(trail) - 1, target - 1, -1):
            values[trail[k] >> 1] = -1
        del trail[target:]
        search_from = pos_lim[blevel]
        del trail_lim[blevel:]
        del pos_lim[blevel:]
        qhead = target

    nodes = 0
    deadline = time.perf_counter() + max_ms / 1000.0 if max_ms else None
    while True:
        confl = propagate()
        if confl != -1:
            if not trail_lim:
                return UNSAT, None, nodes
            learnt, blevel = analyze(confl)
            cancel_until(blevel)
            if len(learnt) == 1:
                enqueue(learnt[0], -1)
            else:
                enqueue(learnt[0], add_clause(learnt))
            continue
        i = search_from
        while i < num_vars and values[order[i]] != -1:
            i += 1
        if i == num_vars:
            return SAT, values[:], nodes
        search_from = i
        nodes += 1
        if max_nodes and nodes > max_nodes:
            return BUDGET, None, nodes
        if deadline is not None and (nodes & 1023) == 0 and time.perf_counter() > deadline:
            return BUDGET, None, nodes
        trail_lim.append(len(trail))
        pos_lim.append(search_from)
        enqueue(2 * order[i] + RED, -1)
