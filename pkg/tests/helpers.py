"""Shared fixtures-in-code: canonical instances and state builders."""

import itertools
import random
from functools import lru_cache

from understanding_sat.algorithms import algorithm_g, lemma_g_conditions
from understanding_sat.cnf import Instance, build_instance
from understanding_sat.engine import FREE, EngineState, GuardExceeded, RunLog
from understanding_sat.solver import SolveConfig, _admit_clause

# Satisfiable by the all-false assignment, yet the main procedure answers
# unsat under input clause order: each clause admitted in turn marks its
# sole positive literal as needed, and the final all-negative clause
# arrives with every literal false beyond repair.
ORDER_TRAP = [(1, -2, -3), (-1, 2, -3), (-1, -2, 3), (-1, -2, -3)]

# All eight sign patterns over three variables: genuinely unsatisfiable.
FULL_SIGN_CORE = [
    tuple(s * v for s, v in zip(signs, (1, 2, 3)))
    for signs in itertools.product((1, -1), repeat=3)
]


def order_trap_instance() -> Instance:
    return build_instance(3, ORDER_TRAP)


def full_sign_instance() -> Instance:
    return build_instance(3, FULL_SIGN_CORE)


def fresh_state(inst: Instance, trace: bool = False) -> EngineState:
    return EngineState(inst, RunLog(enabled=trace))


def admitted_state(inst: Instance, upto: int | None = None):
    """Run the clause-admission loop like the solver does, returning
    (status, state); ``upto`` admits only the first so-many clauses."""
    state = fresh_state(inst)
    cfg = SolveConfig()
    stop = len(inst.clauses) if upto is None else upto
    for clause in inst.clauses[:stop]:
        status, state = _admit_clause(state, clause, cfg)
        if status != "ok":
            return status, state
    return "ok", state


def sweep_assumption_check(
    max_n: int,
    max_m: int,
    witness_limit: int = 3,
    on_comparison=None,
):
    """Compare the behavioral freeing check with the structural freeing
    conditions on every reachable admission state.

    For each variable count up to ``max_n``, every ascending sequence of
    up to ``max_m`` distinct clauses that can still be completed to an
    exactly-supported instance is admitted clause by clause (sharing
    prefixes, exactly as the main loop would).  At every state so
    reached, each still-free literal is checked two ways on the view
    restricted to its own clauses: by actually running the freeing
    check, and by the structural conditions that are supposed to predict
    it.  Returns a dict of counters:

    - ``nodes``: states visited (the empty root included, once per n)
    - ``dead``: admissions that failed (no deeper states behind them)
    - ``comparisons``: (state, literal) pairs checked
    - ``memo_hits``: comparisons answered from the restricted-view cache
    - ``divergences``: comparisons where the two answers differ
    - ``unsound``: divergences where the check approves but the
      conditions reject (the direction that would break soundness)
    - ``witnesses``: up to ``witness_limit`` divergences, each a tuple
      (n, admitted_clauses, literal, check_answer, conditions_answer)

    ``on_comparison(n, admitted_clauses, literal, check, conditions)``
    is called for every comparison when provided, cache hits included.
    """
    cfg = SolveConfig()
    stats = {
        "nodes": 0,
        "dead": 0,
        "comparisons": 0,
        "memo_hits": 0,
        "divergences": 0,
        "unsound": 0,
        "witnesses": [],
    }
    memo: dict = {}

    for n in range(2, max_n + 1):
        literals = [l for v in range(1, n + 1) for l in (v, -v)]
        universe = list(itertools.combinations(literals, 3))
        all_vars = frozenset(range(1, n + 1))

        @lru_cache(maxsize=None)
        def feasible(missing, start, remaining):
            # Can `remaining` more clauses drawn from universe[start:]
            # still cover every `missing` variable?
            if not missing:
                return True
            if remaining == 0 or start >= len(universe):
                return False
            for i in range(start, len(universe)):
                vars_i = frozenset(abs(l) for l in universe[i])
                if vars_i & missing and feasible(
                    missing - vars_i, i + 1, remaining - 1
                ):
                    return True
            return False

        def compare(state, clauses):
            stats["nodes"] += 1
            for var in range(1, n + 1):
                for lit in (var, -var):
                    if state.value(lit) != FREE:
                        continue
                    view = state.restrict_to(lit)
                    key = (lit, view.snapshot())
                    if key in memo:
                        stats["memo_hits"] += 1
                        check, conditions = memo[key]
                    else:
                        check = algorithm_g(view, lit)
                        conditions = lemma_g_conditions(view, lit)
                        memo[key] = (check, conditions)
                    stats["comparisons"] += 1
                    if on_comparison is not None:
                        on_comparison(n, clauses, lit, check, conditions)
                    if check != conditions:
                        stats["divergences"] += 1
                        if check and not conditions:
                            stats["unsound"] += 1
                        if len(stats["witnesses"]) < witness_limit:
                            stats["witnesses"].append(
                                (n, clauses, lit, check, conditions)
                            )

        def dfs(state, start, depth, support, clauses):
            for i in range(start, len(universe)):
                lits = universe[i]
                new_support = support | frozenset(abs(l) for l in lits)
                if not feasible(
                    all_vars - new_support, i + 1, max_m - depth - 1
                ):
                    continue
                child = state.fork()
                child.inst = build_instance(n, list(clauses) + [lits])
                clause = child.inst.clauses[depth]
                try:
                    status, child = _admit_clause(child, clause, cfg)
                except GuardExceeded:
                    status = "anomaly"
                new_clauses = clauses + (lits,)
                compare(child, new_clauses)
                if status == "ok" and depth + 1 < max_m:
                    dfs(child, i + 1, depth + 1, new_support, new_clauses)
                elif status != "ok":
                    stats["dead"] += 1

        root = EngineState(build_instance(n, []))
        compare(root, ())
        dfs(root, 0, 0, frozenset(), ())
        feasible.cache_clear()
    return stats


def random_instance(rng: random.Random, n: int, m: int) -> Instance:
    """Arbitrary well-formed instance; clauses may repeat a variable in
    both polarities (unlike the uniform generator)."""
    literals = [l for v in range(1, n + 1) for l in (v, -v)]
    clauses = []
    seen = set()
    universe = list(itertools.combinations(literals, 3))
    rng.shuffle(universe)
    for lits in universe[:m]:
        key = frozenset(lits)
        if key not in seen:
            seen.add(key)
            clauses.append(lits)
    return build_instance(n, clauses)
