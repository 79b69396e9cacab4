"""Clause-by-clause decision procedure built on the propagation engine.

Clauses are admitted one at a time.  If every literal of the incoming
clause is currently false, ``algorithm_d`` is tried on each literal to
rewrite the map first; if none succeeds the instance is declared
unsatisfiable.  Otherwise the clause's three concepts are added
non-false-focus first, recomputing the fixpoint after each.  When all
clauses are in, an assignment is read off the map and re-checked against
the instance; a satisfiable verdict is only ever reported with a
verified model.

Anomalies are first-class outcomes, not exceptions: a contradiction while
admitting a concept, a guard trip, or a final map that fails verification
each produce an ``anomaly`` outcome carrying the trace.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .algorithms import algorithm_d
from .cnf import Assignment, Clause, Instance, evaluate
from .engine import (
    Contradiction,
    EngineState,
    FALSE,
    FREE,
    GuardExceeded,
    RunLog,
    TRUE,
    flip,
)

ANOMALY_UNDEFINED = "UndefinedAtU4"
ANOMALY_UNVERIFIED = "UnverifiedSat"
ANOMALY_GUARD = "DepthGuard"


@dataclass
class SolveConfig:
    """Run options.

    ``clause_order`` is ``input`` or ``perm`` (with ``order_seed``);
    ``default_free`` fills variables the final map leaves free;
    ``depth_guard_factor`` scales the recursion guard, which is
    factor * (number of literals) + 1.
    """

    clause_order: str = "input"
    order_seed: int | None = None
    default_free: int = 0
    trace: bool = False
    depth_guard_factor: int = 2

    def order_label(self) -> str:
        if self.clause_order == "input":
            return "input"
        return f"perm:{self.order_seed}"


@dataclass
class SolverOutcome:
    kind: str  # "sat" | "unsat" | "anomaly"
    assignment: Assignment | None = None
    understanding: dict[int, str] | None = None
    failing_clause: int | None = None
    anomaly: str | None = None
    ops: int = 0
    guard_trips: int = 0
    state: EngineState | None = None
    trace: list[dict] | None = None

    def as_dict(self) -> dict:
        model = None
        if self.assignment is not None and self.state is not None:
            model = self.assignment.as_signed_literals(
                self.state.inst.variable_count
            )
        return {
            "kind": self.kind,
            "anomaly": self.anomaly,
            "failing_clause": self.failing_clause,
            "ops": self.ops,
            "model": model,
        }


def extract_assignment(
    understanding: dict[int, str], inst: Instance, default_free: int = 0
) -> Assignment:
    """Read a total assignment off the map: true literal -> 1 for its
    variable, false -> 0, both polarities free -> ``default_free``.
    Raises if the map breaks negation coupling."""
    values: dict[int, int] = {}
    for var in range(1, inst.variable_count + 1):
        pos = understanding.get(var, FREE)
        neg = understanding.get(-var, FREE)
        if neg != flip(pos):
            raise ValueError(f"negation coupling violated for variable {var}")
        if pos == FREE:
            values[var] = default_free
        else:
            values[var] = 1 if pos == TRUE else 0
    return Assignment(values=values, default_free=default_free)


def _admit_clause(state: EngineState, clause: Clause, cfg: SolveConfig, on_step=None):
    """Admit one clause; returns (status, state) where status is ``ok``,
    ``unsat`` or ``anomaly`` and state may be a rewritten fork."""
    log = state.log
    lits = clause.literals
    log.emit("U1_CLAUSE", clause=clause.id)
    if all(state.value(l) == FALSE for l in lits):
        log.emit("U2_ALLFALSE", clause=clause.id)
        guard = cfg.depth_guard_factor * (2 * state.inst.variable_count) + 1
        adopted = None
        for lam in lits:
            res = algorithm_d(state, lam, frozenset(), guard)
            if res is not None:
                adopted = res
                break
        if adopted is None:
            return "unsat", state
        state = adopted
    for lit in lits:
        log.emit("U3_VALUE", literal=lit, old=state.value(lit), clause=clause.id)
    remaining = list(lits)
    while remaining:
        non_false = [l for l in remaining if state.value(l) != FALSE]
        pick = (non_false or remaining)[0]
        remaining.remove(pick)
        log.emit("U3_PICK", literal=pick, old=state.value(pick), clause=clause.id)
        res = state.add_concept(clause, pick)
        if isinstance(res, Contradiction):
            return "anomaly", state
        if on_step is not None:
            on_step(state)
    return "ok", state


def _clause_order(inst: Instance, cfg: SolveConfig) -> list[int]:
    order = list(range(len(inst.clauses)))
    if cfg.clause_order == "perm":
        random.Random(cfg.order_seed).shuffle(order)
    elif cfg.clause_order != "input":
        raise ValueError(f"unknown clause order {cfg.clause_order!r}")
    return order


def solve(inst: Instance, cfg: SolveConfig | None = None) -> SolverOutcome:
    """Decide the instance; always terminates with sat, unsat, or anomaly."""
    cfg = cfg if cfg is not None else SolveConfig()
    log = RunLog(enabled=cfg.trace)
    state = EngineState(inst, log)
    for cid in _clause_order(inst, cfg):
        clause = inst.clauses[cid]
        try:
            status, state = _admit_clause(state, clause, cfg)
        except GuardExceeded:
            log.emit("VERDICT", new="anomaly", clause=clause.id)
            return SolverOutcome(
                kind="anomaly",
                anomaly=ANOMALY_GUARD,
                failing_clause=clause.id,
                ops=log.ops,
                guard_trips=log.guard_trips,
                state=state,
                trace=log.events if cfg.trace else None,
            )
        if status == "unsat":
            log.emit("VERDICT", new="unsat", clause=clause.id)
            return SolverOutcome(
                kind="unsat",
                failing_clause=clause.id,
                ops=log.ops,
                guard_trips=log.guard_trips,
                state=state,
                trace=log.events if cfg.trace else None,
            )
        if status == "anomaly":
            log.emit("VERDICT", new="anomaly", clause=clause.id)
            return SolverOutcome(
                kind="anomaly",
                anomaly=ANOMALY_UNDEFINED,
                failing_clause=clause.id,
                ops=log.ops,
                guard_trips=log.guard_trips,
                state=state,
                trace=log.events if cfg.trace else None,
            )
    return _finalize(state, inst, cfg)


def _finalize(state: EngineState, inst: Instance, cfg: SolveConfig) -> SolverOutcome:
    log = state.log
    understanding = {}
    for var in range(1, inst.variable_count + 1):
        understanding[var] = state.value(var)
        understanding[-var] = state.value(-var)
    try:
        assignment = extract_assignment(understanding, inst, cfg.default_free)
    except ValueError:
        assignment = None
    verified = assignment is not None and not evaluate(inst, assignment)
    each_clause_witnessed = all(
        any(state.value(l) == TRUE for l in c.literals) for c in inst.clauses
    )
    if not verified or not each_clause_witnessed:
        log.emit("VERDICT", new="anomaly")
        return SolverOutcome(
            kind="anomaly",
            anomaly=ANOMALY_UNVERIFIED,
            understanding=understanding,
            ops=log.ops,
            guard_trips=log.guard_trips,
            state=state,
            trace=log.events if cfg.trace else None,
        )
    log.emit("VERDICT", new="sat")
    return SolverOutcome(
        kind="sat",
        assignment=assignment,
        understanding=understanding,
        ops=log.ops,
        guard_trips=log.guard_trips,
        state=state,
        trace=log.events if cfg.trace else None,
    )
