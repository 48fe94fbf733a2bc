"""Minimal DPLL SAT solver, used only by tests to certify CNF exports.

Clauses are lists of non-zero DIMACS literals.  Nothing here is shared with
the package's search kernel, so satisfiability agreement is an independent
check.
"""

from __future__ import annotations


def parse_dimacs(text: str) -> tuple[int, list[list[int]]]:
    num_vars = 0
    clauses: list[list[int]] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            assert parts[1] == "cnf"
            num_vars = int(parts[2])
            continue
        lits = [int(x) for x in line.split()]
        assert lits[-1] == 0
        clauses.append(lits[:-1])
    return num_vars, clauses


def dpll_satisfiable(num_vars: int, clauses: list[list[int]]) -> bool:
    assignment: dict[int, bool] = {}

    def value(lit: int):
        var = abs(lit)
        if var not in assignment:
            return None
        return assignment[var] if lit > 0 else not assignment[var]

    def solve(clauses: list[list[int]]) -> bool:
        # unit propagation
        while True:
            unit = None
            for clause in clauses:
                unassigned = []
                satisfied = False
                for lit in clause:
                    v = value(lit)
                    if v is True:
                        satisfied = True
                        break
                    if v is None:
                        unassigned.append(lit)
                if satisfied:
                    continue
                if not unassigned:
                    return False
                if len(unassigned) == 1:
                    unit = unassigned[0]
                    break
            if unit is None:
                break
            assignment[abs(unit)] = unit > 0
        # pick a branch variable
        branch = None
        for clause in clauses:
            if any(value(lit) is True for lit in clause):
                continue
            for lit in clause:
                if value(lit) is None:
                    branch = abs(lit)
                    break
            if branch is not None:
                break
        if branch is None:
            return True  # every clause satisfied
        saved = dict(assignment)
        for choice in (True, False):
            assignment.clear()
            assignment.update(saved)
            assignment[branch] = choice
            if solve(clauses):
                return True
        assignment.clear()
        assignment.update(saved)
        return False

    return solve(clauses)
