"""Reference deciders used to adjudicate the main procedure.

``brute_force`` enumerates assignments as bit patterns and is the ground
truth for small instances; ``dpll`` is a plain unit-propagating
backtracker that scales a little further.  Both return an
``OracleVerdict`` carrying a model when one exists, and both are tested
against each other so neither is a single point of failure.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cnf import Assignment, Instance

BRUTE_FORCE_MAX_VARS = 30


@dataclass
class OracleVerdict:
    sat: bool
    model: Assignment | None
    nodes: int  # assignments tried / search nodes visited
    method: str

    def as_dict(self) -> dict:
        return {"sat": self.sat, "nodes": self.nodes, "method": self.method}


def brute_force(inst: Instance) -> OracleVerdict:
    """Try assignments 0, 1, 2, ... over n bits; variable i is bit
    (n - i), so x1 is the most significant bit.  First model wins."""
    n = inst.variable_count
    if n > BRUTE_FORCE_MAX_VARS:
        raise ValueError(f"brute force capped at {BRUTE_FORCE_MAX_VARS} variables, got {n}")
    # Precompute, per clause, the mask of its variables and the bit
    # pattern under which the clause is falsified (all three literals
    # false simultaneously).  A clause holding both polarities of one
    # variable has no such pattern — it can never be falsified — and
    # must be dropped, not merged bitwise into a phantom pattern.
    masks = []
    for clause in inst.clauses:
        mask = 0
        pattern = 0
        tautological = False
        for lit in clause.literals:
            bit = 1 << (n - abs(lit))
            want = bit if lit < 0 else 0
            if mask & bit and (pattern & bit) != want:
                tautological = True
                break
            mask |= bit
            pattern |= want
        if not tautological:
            masks.append((mask, pattern))
    tried = 0
    for k in range(1 << n):
        tried += 1
        ok = True
        for mask, pattern in masks:
            if (k & mask) == pattern:
                ok = False
                break
        if ok:
            values = {i: (k >> (n - i)) & 1 for i in range(1, n + 1)}
            return OracleVerdict(True, Assignment(values=values), tried, "brute")
    return OracleVerdict(False, None, tried, "brute")


def dpll(inst: Instance) -> OracleVerdict:
    """Unit propagation plus branching on the lowest unassigned
    variable, true branch first."""
    n = inst.variable_count
    clauses = [c.literals for c in inst.clauses]
    nodes = 0

    def lit_value(lit: int, assign: dict[int, bool]):
        var = abs(lit)
        if var not in assign:
            return None
        val = assign[var]
        return val if lit > 0 else not val

    def propagate(assign: dict[int, bool]):
        """Returns False on conflict, else True; mutates assign."""
        changed = True
        while changed:
            changed = False
            for lits in clauses:
                unassigned = None
                satisfied = False
                open_count = 0
                for lit in lits:
                    v = lit_value(lit, assign)
                    if v is True:
                        satisfied = True
                        break
                    if v is None:
                        open_count += 1
                        unassigned = lit
                if satisfied:
                    continue
                if open_count == 0:
                    return False
                if open_count == 1:
                    assign[abs(unassigned)] = unassigned > 0
                    changed = True
        return True

    def search(assign: dict[int, bool]):
        nonlocal nodes
        nodes += 1
        assign = dict(assign)
        if not propagate(assign):
            return None
        var = next((v for v in range(1, n + 1) if v not in assign), None)
        if var is None:
            return assign
        for val in (True, False):
            assign[var] = val
            result = search(assign)
            if result is not None:
                return result
        return None

    model = search({})
    if model is None:
        return OracleVerdict(False, None, nodes, "dpll")
    values = {v: int(model.get(v, False)) for v in range(1, n + 1)}
    return OracleVerdict(True, Assignment(values=values), nodes, "dpll")
