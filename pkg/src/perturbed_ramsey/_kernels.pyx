# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled two-sided clause search kernel.

Exact mirror of ``_pykernels.solve_two_sided`` (same clause-learning search,
same watch-list discipline, same budget checks), so verdicts, witnesses and
node counts agree bit for bit with the pure-Python fallback.  See that
module for the algorithm description.
"""

import time

import numpy as np

RED = 0
BLUE = 1
UNSAT = 0
SAT = 1
BUDGET = 2
BACKEND = "compiled"


cdef class _Solver:
    cdef int num_vars
    cdef object values_a, level_a, reason_a, seen_a
    cdef signed char[::1] values
    cdef int[::1] level
    cdef int[::1] reason
    cdef signed char[::1] seen

    cdef object cl_off_a, cl_len_a, lit_data_a
    cdef int[::1] cl_off
    cdef int[::1] cl_len
    cdef int[::1] lit_data
    cdef int n_clauses, n_lits

    cdef object w_head_a, wl_clause_a, wl_next_a
    cdef int[::1] w_head
    cdef int[::1] wl_clause
    cdef int[::1] wl_next
    cdef int n_watch_nodes, free_head

    cdef object trail_a, trail_lim_a, pos_lim_a, learnt_a, to_clear_a
    cdef int[::1] trail
    cdef int[::1] trail_lim
    cdef int[::1] pos_lim
    cdef int[::1] learnt
    cdef int[::1] to_clear
    cdef int trail_len, n_levels, qhead, search_from

    def __cinit__(self, int num_vars, int n_initial_clauses, int n_initial_lits):
        self.num_vars = num_vars
        n1 = max(num_vars, 1)
        self.values_a = np.full(n1, -1, dtype=np.int8)
        self.level_a = np.zeros(n1, dtype=np.int32)
        self.reason_a = np.full(n1, -1, dtype=np.int32)
        self.seen_a = np.zeros(n1, dtype=np.int8)
        self.values = self.values_a
        self.level = self.level_a
        self.reason = self.reason_a
        self.seen = self.seen_a

        self.cl_off_a = np.zeros(max(n_initial_clauses * 2, 16), dtype=np.int32)
        self.cl_len_a = np.zeros(max(n_initial_clauses * 2, 16), dtype=np.int32)
        self.lit_data_a = np.zeros(max(n_initial_lits * 2, 16), dtype=np.int32)
        self.cl_off = self.cl_off_a
        self.cl_len = self.cl_len_a
        self.lit_data = self.lit_data_a
        self.n_clauses = 0
        self.n_lits = 0

        self.w_head_a = np.full(max(2 * num_vars, 1), -1, dtype=np.int32)
        self.wl_clause_a = np.zeros(max(n_initial_clauses * 4, 16), dtype=np.int32)
        self.wl_next_a = np.zeros(max(n_initial_clauses * 4, 16), dtype=np.int32)
        self.w_head = self.w_head_a
        self.wl_clause = self.wl_clause_a
        self.wl_next = self.wl_next_a
        self.n_watch_nodes = 0
        self.free_head = -1

        self.trail_a = np.zeros(n1, dtype=np.int32)
        self.trail_lim_a = np.zeros(n1 + 1, dtype=np.int32)
        self.pos_lim_a = np.zeros(n1 + 1, dtype=np.int32)
        self.learnt_a = np.zeros(n1 + 1, dtype=np.int32)
        self.to_clear_a = np.zeros(n1 + 1, dtype=np.int32)
        self.trail = self.trail_a
        self.trail_lim = self.trail_lim_a
        self.pos_lim = self.pos_lim_a
        self.learnt = self.learnt_a
        self.to_clear = self.to_clear_a
        self.trail_len = 0
        self.n_levels = 0
        self.qhead = 0
        self.search_from = 0

    cdef inline int lit_value(self, int lit) noexcept:
        cdef signed char v = self.values[lit >> 1]
        if v == -1:
            return -1
        return 1 if v == (lit & 1) else 0

    cdef inline void enqueue(self, int lit, int rsn) noexcept:
        cdef int var = lit >> 1
        self.values[var] = <signed char> (lit & 1)
        self.level[var] = self.n_levels
        self.reason[var] = rsn
        self.trail[self.trail_len] = lit
        self.trail_len += 1

    cdef void _grow_watch_arena(self):
        cdef object new_c = np.zeros(2 * self.wl_clause.shape[0], dtype=np.int32)
        cdef object new_n = np.zeros(2 * self.wl_next.shape[0], dtype=np.int32)
        new_c[: self.n_watch_nodes] = self.wl_clause_a[: self.n_watch_nodes]
        new_n[: self.n_watch_nodes] = self.wl_next_a[: self.n_watch_nodes]
        self.wl_clause_a = new_c
        self.wl_next_a = new_n
        self.wl_clause = new_c
        self.wl_next = new_n

    cdef inline void watch_add(self, int lit, int c):
        cdef int node
        if self.free_head != -1:
            node = self.free_head
            self.free_head = self.wl_next[node]
            self.wl_clause[node] = c
            self.wl_next[node] = self.w_head[lit]
        else:
            if self.n_watch_nodes == self.wl_clause.shape[0]:
                self._grow_watch_arena()
            node = self.n_watch_nodes
            self.n_watch_nodes += 1
            self.wl_clause[node] = c
            self.wl_next[node] = self.w_head[lit]
        self.w_head[lit] = node

    cdef int add_clause(self, int[::1] buf, int k):
        cdef int c = self.n_clauses
        cdef object new_arr
        cdef int i
        if c == self.cl_off.shape[0]:
            new_arr = np.zeros(2 * c, dtype=np.int32)
            new_arr[:c] = self.cl_off_a[:c]
            self.cl_off_a = new_arr
            self.cl_off = new_arr
            new_arr = np.zeros(2 * c, dtype=np.int32)
            new_arr[:c] = self.cl_len_a[:c]
            self.cl_len_a = new_arr
            self.cl_len = new_arr
        while self.n_lits + k > self.lit_data.shape[0]:
            new_arr = np.zeros(2 * self.lit_data.shape[0], dtype=np.int32)
            new_arr[: self.n_lits] = self.lit_data_a[: self.n_lits]
            self.lit_data_a = new_arr
            self.lit_data = new_arr
        self.cl_off[c] = self.n_lits
        self.cl_len[c] = k
        for i in range(k):
            self.lit_data[self.n_lits + i] = buf[i]
        self.n_lits += k
        self.n_clauses += 1
        self.watch_add(buf[0], c)
        self.watch_add(buf[1], c)
        return c

    cdef int propagate(self) noexcept:
        cdef int lit, flit, prev, node, nxt, c, off, w0, v0, found, k, end, moved
        while self.qhead < self.trail_len:
            lit = self.trail[self.qhead]
            self.qhead += 1
            flit = lit ^ 1
            prev = -1
            node = self.w_head[flit]
            while node != -1:
                nxt = self.wl_next[node]
                c = self.wl_clause[node]
                off = self.cl_off[c]
                if self.lit_data[off] == flit:
                    self.lit_data[off] = self.lit_data[off + 1]
                    self.lit_data[off + 1] = flit
                w0 = self.lit_data[off]
                v0 = self.lit_value(w0)
                if v0 == 1:
                    prev = node
                    node = nxt
                    continue
                found = -1
                end = off + self.cl_len[c]
                for k in range(off + 2, end):
                    if self.lit_value(self.lit_data[k]) != 0:
                        found = k
                        break
                if found != -1:
                    moved = self.lit_data[found]
                    self.lit_data[found] = self.lit_data[off + 1]
                    self.lit_data[off + 1] = moved
                    if prev == -1:
                        self.w_head[flit] = nxt
                    else:
                        self.wl_next[prev] = nxt
                    self.wl_next[node] = self.w_head[moved]
                    self.w_head[moved] = node
                    node = nxt
                    continue
                if v0 == 0:
                    return c
                self.enqueue(w0, c)
                prev = node
                node = nxt
        return -1

    cdef int analyze(self, int confl, int *blevel_out) noexcept:
        cdef int learnt_len = 1
        cdef int clear_len = 0
        cdef int counter = 0
        cdef int p = -1
        cdef int index = self.trail_len - 1
        cdef int cur_level = self.n_levels
        cdef int c = confl
        cdef int off, start, k, q, v, max_i, tmp, blevel
        while True:
            off = self.cl_off[c]
            start = off if p == -1 else off + 1
            for k in range(start, off + self.cl_len[c]):
                q = self.lit_data[k]
                v = q >> 1
                if self.seen[v] == 0 and self.level[v] > 0:
                    self.seen[v] = 1
                    self.to_clear[clear_len] = v
                    clear_len += 1
                    if self.level[v] == cur_level:
                        counter += 1
                    else:
                        self.learnt[learnt_len] = q
                        learnt_len += 1
            while self.seen[self.trail[index] >> 1] == 0:
                index -= 1
            p = self.trail[index]
            index -= 1
            counter -= 1
            if counter == 0:
                break
            c = self.reason[p >> 1]
        self.learnt[0] = p ^ 1
        if learnt_len == 1:
            blevel = 0
        else:
            max_i = 1
            for k in range(2, learnt_len):
                if self.level[self.learnt[k] >> 1] > self.level[self.learnt[max_i] >> 1]:
                    max_i = k
            tmp = self.learnt[1]
            self.learnt[1] = self.learnt[max_i]
            self.learnt[max_i] = tmp
            blevel = self.level[self.learnt[1] >> 1]
        for k in range(clear_len):
            self.seen[self.to_clear[k]] = 0
        blevel_out[0] = blevel
        return learnt_len

    cdef void cancel_until(self, int blevel) noexcept:
        cdef int target, k
        if self.n_levels <= blevel:
            return
        target = self.trail_lim[blevel]
        for k in range(self.trail_len - 1, target - 1, -1):
            self.values[self.trail[k] >> 1] = -1
        self.trail_len = target
        self.search_from = self.pos_lim[blevel]
        self.n_levels = blevel
        self.qhead = target


def solve_two_sided(num_vars, clause_pols, clause_vars, order, fix_first,
                    max_nodes=0, max_ms=0.0):
    """See ``_pykernels.solve_two_sided`` for the contract."""
    cdef int nv = num_vars
    cdef int nc = len(clause_pols)
    cdef long long maxn = max_nodes
    cdef double budget_ms = max_ms
    cdef bint fix = bool(fix_first)
    cdef int i, k, pol, lit, v, confl, blevel, learnt_len
    cdef long long nodes = 0

    cdef int total = 0
    for vars_ in clause_vars:
        k = len(vars_)
        if k == 0:
            return UNSAT, None, 0
        total += k

    cdef _Solver s = _Solver(nv, nc, total)
    order_arr = np.asarray(order, dtype=np.int32)
    cdef int[::1] order_mv = order_arr if nv else np.zeros(1, dtype=np.int32)

    buf_a = np.zeros(max(nv + 1, 16), dtype=np.int32)
    cdef int[::1] buf = buf_a

    units_a = np.zeros(nc + 2, dtype=np.int32)
    cdef int[::1] units = units_a
    cdef int n_units = 0
    if fix and nv > 0:
        units[n_units] = 2 * order_mv[0] + RED
        n_units += 1
    for i in range(nc):
        vars_ = clause_vars[i]
        pol = clause_pols[i]
        k = len(vars_)
        if k == 1:
            units[n_units] = 2 * <int> vars_[0] + pol
            n_units += 1
        else:
            if k > buf.shape[0]:
                raise ValueError("clause longer than the variable count")
            for v in range(k):
                buf[v] = 2 * <int> vars_[v] + pol
            s.add_clause(buf, k)
    for i in range(n_units):
        lit = units[i]
        v = s.lit_value(lit)
        if v == 0:
            return UNSAT, None, 0
        if v == -1:
            s.enqueue(lit, -1)

    cdef double deadline = 0.0
    cdef bint use_deadline = budget_ms > 0
    if use_deadline:
        deadline = time.perf_counter() + budget_ms / 1000.0

    while True:
        confl = s.propagate()
        if confl != -1:
            if s.n_levels == 0:
                return UNSAT, None, int(nodes)
            learnt_len = s.analyze(confl, &blevel)
            s.cancel_until(blevel)
            if learnt_len == 1:
                s.enqueue(s.learnt[0], -1)
            else:
                s.enqueue(s.learnt[0], s.add_clause(s.learnt, learnt_len))
            continue
        i = s.search_from
        while i < nv and s.values[order_mv[i]] != -1:
            i += 1
        if i == nv:
            return SAT, [int(s.values[k]) for k in range(nv)], int(nodes)
        s.search_from = i
        nodes += 1
        if maxn and nodes > maxn:
            return BUDGET, None, int(nodes)
        if use_deadline and (nodes & 1023) == 0:
            if time.perf_counter() > deadline:
                return BUDGET, None, int(nodes)
        s.trail_lim[s.n_levels] = s.trail_len
        s.pos_lim[s.n_levels] = s.search_from
        s.n_levels += 1
        s.enqueue(2 * order_mv[i] + RED, -1)
