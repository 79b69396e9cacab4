"""Truth-value propagation engine over per-clause literal contexts.

The engine keeps a three-valued map over literals ("the understanding"):
every literal is true (``t``), false (``f``), or free (``e``), with the
two polarities of a variable permanently coupled (one true iff the other
false, free together).

Each admitted clause contributes up to three *concepts*.  The concept of a
focus literal in a clause is the pair of companion literals of that
clause, read under the current map.  A concept is classified ``C+`` when
no companion is currently true (the focus is still needed to cover the
clause) and ``C*`` when some companion is true (the clause is covered
without the focus).

The value of a literal is recomputed from two predicates:

* ``P`` - some concept focused on the literal is ``C+``;
* ``Q`` - some concept focused on its negation is ``C+``.

``P`` alone forces true, ``Q`` alone forces false, neither leaves the
literal free, and both at once is a contradiction (the map cannot be
defined).  Assumption pins in the constraint overlay take precedence over
the computed value; a computed value that directly opposes a pin, or a
computed true on a literal constrained not-true, is also a contradiction.

``compute_fixpoint`` re-runs this rule over a worklist until stable.  All
mutating entry points are atomic: when a contradiction surfaces, the
state is rolled back to what it was on entry.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .cnf import Clause, Instance

TruthValue = str

TRUE: TruthValue = "t"
FALSE: TruthValue = "f"
FREE: TruthValue = "e"

CPLUS = "C+"
CSTAR = "C*"
SET_PLUS = "set+"
SET_STAR = "set*"

_FLIP = {TRUE: FALSE, FALSE: TRUE, FREE: FREE}

ConceptKey = tuple[int, int]  # (origin clause id, focus literal)


def flip(value: TruthValue) -> TruthValue:
    """Value of the opposite polarity under the coupling rule."""
    return _FLIP[value]


def concept_type_of(a: TruthValue, b: TruthValue) -> str:
    """Classify a concept from its two companion values.

    ``C*`` exactly when at least one companion is true; the six value
    combinations (order-insensitive) split as:
    ee/ff/ef -> C+ and tt/et/tf -> C*.
    """
    return CSTAR if a == TRUE or b == TRUE else CPLUS


def concept_set_type(types) -> str:
    """``set+`` when at least one member concept is C+, else ``set*``.

    The empty set is not accepted; callers treat it as its own case.
    """
    types = list(types)
    if not types:
        raise ValueError("concept set type is undefined for the empty set")
    return SET_PLUS if CPLUS in types else SET_STAR


class GuardExceeded(RuntimeError):
    """A termination guard tripped (recursion depth or fixpoint steps)."""


@dataclass
class Contradiction:
    """Witness that the map cannot be defined: the literal whose
    recomputation failed, and why."""

    witness: int
    reason: str


@dataclass
class ConstraintOverlay:
    """Assumptions layered over the computed map.

    ``pinned`` literals keep their assumed value unless the computed value
    directly opposes it; ``not_true`` literals may be free or false but a
    computed true is a contradiction.  A literal is never both pinned true
    and constrained not-true.
    """

    pinned: dict[int, TruthValue] = field(default_factory=dict)
    not_true: set[int] = field(default_factory=set)

    def copy(self) -> "ConstraintOverlay":
        return ConstraintOverlay(dict(self.pinned), set(self.not_true))


class RunLog:
    """Shared per-run accounting: the basic-operation counter, guard trip
    counts, and (when enabled) the append-only trace of events.

    Forked states share the log of their parent, so work done on discarded
    branches still counts toward the run and stays visible in the trace.
    """

    __slots__ = ("ops", "events", "enabled", "guard_trips", "paper_gaps")

    def __init__(self, enabled: bool = False):
        self.ops = 0
        self.events: list[dict] = []
        self.enabled = enabled
        self.guard_trips = 0
        self.paper_gaps = 0

    def emit(self, kind: str, literal=None, old=None, new=None, clause=None):
        if self.enabled:
            self.events.append(
                {
                    "step": len(self.events),
                    "kind": kind,
                    "literal": literal,
                    "old": old,
                    "new": new,
                    "clause": clause,
                    "counter": self.ops,
                }
            )


class EngineState:
    """Mutable engine state: admitted clauses, concept store, value map,
    constraint overlay, and the shared run log."""

    __slots__ = (
        "inst",
        "values",
        "concepts",
        "by_focus",
        "by_member",
        "admitted",
        "overlay",
        "log",
    )

    def __init__(self, inst: Instance, log: RunLog | None = None):
        self.inst = inst
        self.values: dict[int, TruthValue] = {}
        self.concepts: dict[ConceptKey, tuple[int, int]] = {}
        self.by_focus: dict[int, list[ConceptKey]] = {}
        self.by_member: dict[int, list[ConceptKey]] = {}
        self.admitted: set[int] = set()
        self.overlay = ConstraintOverlay()
        self.log = log if log is not None else RunLog()

    # -- reads ---------------------------------------------------------

    def value(self, literal: int) -> TruthValue:
        return self.values.get(literal, FREE)

    def effective_value(self, literal: int) -> TruthValue:
        """Stored value with the overlay pin, if any, taking precedence."""
        pin = self.overlay.pinned.get(literal)
        if pin is not None:
            return pin
        return self.values.get(literal, FREE)

    def concept_type(self, key: ConceptKey) -> str:
        m1, m2 = self.concepts[key]
        return concept_type_of(self.effective_value(m1), self.effective_value(m2))

    def concepts_focused(self, literal: int) -> list[ConceptKey]:
        """Concept keys focused on ``literal``, ascending by origin clause."""
        return sorted(self.by_focus.get(literal, ()))

    def _needs(self, literal: int) -> bool:
        # True when some concept focused on the literal is C+.
        values = self.values
        pinned = self.overlay.pinned
        for key in self.by_focus.get(literal, ()):
            m1, m2 = self.concepts[key]
            v1 = pinned.get(m1) or values.get(m1, FREE)
            v2 = pinned.get(m2) or values.get(m2, FREE)
            if v1 != TRUE and v2 != TRUE:
                return True
        return False

    def reevaluate_literal(self, literal: int) -> TruthValue | Contradiction:
        """One basic operation: the literal's value under the current
        concepts and overlay, or a Contradiction marker."""
        self.log.ops += 1
        p = self._needs(literal)
        q = self._needs(-literal)
        if p and q:
            return Contradiction(literal, "needed-and-opposed")
        computed = TRUE if p else FALSE if q else FREE
        pin = self.overlay.pinned.get(literal)
        if pin is not None:
            if computed == flip(pin) and computed != FREE:
                return Contradiction(literal, "pin-conflict")
            return pin
        if computed == TRUE and literal in self.overlay.not_true:
            return Contradiction(literal, "not-true-forced")
        return computed

    # -- overlay -------------------------------------------------------

    def pin_literal(self, literal: int, value: TruthValue) -> bool:
        """Record an assumption pin on the literal pair; False on clash
        with an existing pin or not-true constraint."""
        if value not in (TRUE, FALSE):
            raise ValueError("pins must be true or false")
        o = self.overlay
        for lit, v in ((literal, value), (-literal, flip(value))):
            existing = o.pinned.get(lit)
            if existing is not None and existing != v:
                return False
            if v == TRUE and lit in o.not_true:
                return False
        o.pinned[literal] = value
        o.pinned[-literal] = flip(value)
        return True

    def add_not_true(self, literal: int) -> bool:
        """Constrain the literal to free-or-false; False if pinned true."""
        if self.overlay.pinned.get(literal) == TRUE:
            return False
        self.overlay.not_true.add(literal)
        return True

    # -- mutations -----------------------------------------------------

    def _set_pair(self, literal: int, value: TruthValue) -> None:
        for lit, v in ((literal, value), (-literal, flip(value))):
            if v == FREE:
                self.values.pop(lit, None)
            else:
                self.values[lit] = v

    def _dependents(self, literal: int) -> list[int]:
        # Variables whose focused concepts contain either polarity of the
        # changed literal; their values may need recomputation.
        out = set()
        for lit in (literal, -literal):
            for key in self.by_member.get(lit, ()):
                out.add(abs(key[1]))
        return sorted(out)

    def _step_cap(self) -> int:
        return 64 + 8 * (len(self.concepts) + 1) * (2 * self.inst.variable_count + 2)

    def compute_fixpoint(self, seeds) -> Contradiction | None:
        """Recompute values starting from ``seeds`` until stable.

        FIFO worklist over variable pairs, seeded in index order.  A value
        change re-enqueues every variable whose focused concepts mention
        the changed pair.  On contradiction every value change made by
        this call is rolled back before returning the witness.
        """
        queue: deque[int] = deque()
        queued: set[int] = set()
        for var in sorted({abs(s) for s in seeds}):
            queue.append(var)
            queued.add(var)
        undo: list[tuple[int, TruthValue]] = []
        steps = 0
        cap = self._step_cap()
        while queue:
            steps += 1
            if steps > cap:
                self._rollback(undo)
                self.log.guard_trips += 1
                raise GuardExceeded("fixpoint step guard exceeded")
            var = queue.popleft()
            queued.discard(var)
            r_pos = self.reevaluate_literal(var)
            if isinstance(r_pos, Contradiction):
                self._rollback(undo)
                self.log.emit(
                    "CONTRADICTION", literal=r_pos.witness, new=r_pos.reason
                )
                return r_pos
            r_neg = self.reevaluate_literal(-var)
            if isinstance(r_neg, Contradiction):
                self._rollback(undo)
                self.log.emit(
                    "CONTRADICTION", literal=r_neg.witness, new=r_neg.reason
                )
                return r_neg
            if r_neg != flip(r_pos):
                raise AssertionError(
                    f"coupling broke during recomputation of variable {var}"
                )
            old = self.value(var)
            if r_pos != old:
                undo.append((var, old))
                self._set_pair(var, r_pos)
                self.log.emit("SET", literal=var, old=old, new=r_pos)
                for dep in self._dependents(var):
                    if dep not in queued:
                        queue.append(dep)
                        queued.add(dep)
        return None

    def _rollback(self, undo) -> None:
        for var, old in reversed(undo):
            self._set_pair(var, old)

    def insert_concept(self, clause: Clause, focus: int) -> ConceptKey:
        """Index a concept without recomputation; low-level piece of
        ``add_concept``, also used to stage states in tests."""
        key = (clause.id, focus)
        if key in self.concepts:
            raise ValueError(f"concept {key} already present")
        if focus not in clause.literals:
            raise ValueError(f"focus {focus} not in clause {clause.id}")
        members = tuple(lit for lit in clause.literals if lit != focus)
        self.concepts[key] = members
        self.by_focus.setdefault(focus, []).append(key)
        for m in members:
            self.by_member.setdefault(m, []).append(key)
        self.admitted.add(clause.id)
        return key

    def _remove_concept(self, key: ConceptKey, newly_admitted: bool) -> None:
        members = self.concepts.pop(key)
        focus = key[1]
        self.by_focus[focus].remove(key)
        if not self.by_focus[focus]:
            del self.by_focus[focus]
        for m in members:
            self.by_member[m].remove(key)
            if not self.by_member[m]:
                del self.by_member[m]
        if newly_admitted:
            self.admitted.discard(key[0])

    def add_concept(self, clause: Clause, focus: int) -> Contradiction | None:
        """Admit one concept and propagate; atomic on contradiction."""
        newly = clause.id not in self.admitted
        key = self.insert_concept(clause, focus)
        self.log.emit("ADD_CONCEPT", literal=focus, clause=clause.id)
        try:
            res = self.compute_fixpoint([focus])
        except GuardExceeded:
            self._remove_concept(key, newly)
            raise
        if res is not None:
            self._remove_concept(key, newly)
        return res

    # -- copies --------------------------------------------------------

    def fork(self) -> "EngineState":
        """Observationally independent copy sharing the run log."""
        n = object.__new__(EngineState)
        n.inst = self.inst
        n.values = dict(self.values)
        n.concepts = dict(self.concepts)
        n.by_focus = {k: list(v) for k, v in self.by_focus.items()}
        n.by_member = {k: list(v) for k, v in self.by_member.items()}
        n.admitted = set(self.admitted)
        n.overlay = self.overlay.copy()
        n.log = self.log
        return n

    def restrict_to(self, literal: int) -> "EngineState":
        """Copy restricted to admitted clauses containing the literal or
        its negation; values and overlay carry over unchanged."""
        keep = {
            cid
            for cid in self.admitted
            if literal in self.inst.clauses[cid].literals
            or -literal in self.inst.clauses[cid].literals
        }
        n = object.__new__(EngineState)
        n.inst = self.inst
        n.values = dict(self.values)
        n.admitted = keep
        n.concepts = {k: v for k, v in self.concepts.items() if k[0] in keep}
        n.by_focus = {}
        n.by_member = {}
        for focus, keys in self.by_focus.items():
            kept = [k for k in keys if k[0] in keep]
            if kept:
                n.by_focus[focus] = kept
        for member, keys in self.by_member.items():
            kept = [k for k in keys if k[0] in keep]
            if kept:
                n.by_member[member] = kept
        n.overlay = self.overlay.copy()
        n.log = self.log
        return n

    # -- inspection helpers (used by tests and the harness) -------------

    def snapshot(self):
        """Canonical immutable view of the semantic state (run log and
        accounting excluded)."""
        return (
            tuple(sorted(self.values.items())),
            tuple(sorted(self.concepts.items())),
            tuple(sorted(self.admitted)),
            tuple(sorted(self.overlay.pinned.items())),
            tuple(sorted(self.overlay.not_true)),
        )

    def coupling_violations(self) -> list[int]:
        out = []
        for var in range(1, self.inst.variable_count + 1):
            if self.value(var) != flip(self.value(-var)):
                out.append(var)
        return out

    def soundness_violations(self) -> list[int]:
        """Unpinned literals whose stored value disagrees with
        recomputation; empty after any successful fixpoint."""
        out = []
        for var in range(1, self.inst.variable_count + 1):
            for lit in (var, -var):
                if lit in self.overlay.pinned:
                    continue
                r = self.reevaluate_literal(lit)
                if isinstance(r, Contradiction) or r != self.value(lit):
                    out.append(lit)
        return out
