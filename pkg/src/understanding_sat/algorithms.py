"""Search procedures layered on the propagation engine.

``algorithm_g`` asks whether the map can be rewritten so a currently free
literal becomes true.  ``algorithm_d`` asks whether the map can be
rewritten so a currently false literal becomes free, recursively freeing
companion literals where needed.  Both work on forks and never mutate
their input; ``algorithm_d`` returns the rewritten fork on success.

``lemma_g_conditions`` is an independently coded structural predicate
kept solely as a test oracle for ``algorithm_g``; the two must agree on
small states and are deliberately never merged.
"""

from __future__ import annotations

from .engine import CPLUS, EngineState, FALSE, FREE, GuardExceeded, TRUE


def algorithm_g(state: EngineState, literal: int) -> bool:
    """Can the map be rewritten so ``literal`` (currently free) is true?

    Works entirely on forks of ``state``.  The literal is pinned true and
    each concept focused on it is tried in ascending origin-clause order:
    both companions are constrained not-true on a fresh fork and the
    fixpoint is recomputed.  The first attempt that survives without
    contradiction answers yes; exhaustion (or no concepts at all) answers
    no.
    """
    if state.value(literal) != FREE:
        raise ValueError("algorithm_g requires a free literal")
    log = state.log
    log.emit("G_ENTER", literal=literal)
    base = state.fork()
    if not base.pin_literal(literal, TRUE):
        log.emit("G_RESULT", literal=literal, new="false")
        return False
    log.emit("G_PIN", literal=literal, new=TRUE)
    for key in base.concepts_focused(literal):
        m1, m2 = base.concepts[key]
        attempt = base.fork()
        if not (attempt.add_not_true(m1) and attempt.add_not_true(m2)):
            continue
        if attempt.compute_fixpoint([literal, m1, m2]) is None:
            log.emit("G_RESULT", literal=literal, new="true", clause=key[0])
            return True
    log.emit("G_RESULT", literal=literal, new="false")
    return False


def lemma_g_conditions(state: EngineState, literal: int) -> bool:
    """Structural test oracle for ``algorithm_g``.

    Answers yes iff some concept focused on the literal, with companions
    l1 and l2, satisfies both:

    (a) no concept focused on the negation has exactly {l1, l2} as its
        companions, and
    (b) no two concepts focused on the negation pair l1 with some x and
        l2 with the negation of x.
    """
    if state.value(literal) != FREE:
        raise ValueError("lemma_g_conditions requires a free literal")
    opposing = [
        frozenset(state.concepts[k]) for k in state.by_focus.get(-literal, ())
    ]
    opposing_sets = set(opposing)
    for key in state.concepts_focused(literal):
        m1, m2 = state.concepts[key]
        if frozenset((m1, m2)) in opposing_sets:
            continue
        blocked = False
        for pair in opposing:
            if m1 in pair:
                (x,) = pair - {m1}
                if frozenset((m2, -x)) in opposing_sets:
                    blocked = True
                    break
        if not blocked:
            return True
    return False


def algorithm_d(
    state: EngineState,
    literal: int,
    history: frozenset[int] = frozenset(),
    depth_guard: int | None = None,
) -> EngineState | None:
    """Rewrite the map so ``literal`` (currently false) becomes free.

    The literal is false because some concepts focused on its negation are
    C+ typed.  Each such concept (re-derived live, ascending origin
    order) must be covered by making one of its companions true: a false
    companion is first freed by recursion (with the current literal added
    to ``history`` to block circular arguments), then checked by
    ``algorithm_g`` on the state restricted to the clauses that contain
    it, then pinned true with the fixpoint recomputed.  Companions in
    ``history`` are skipped.  A concept none of whose companions works
    fails the whole call.

    Returns the rewritten fork (with the literal free) or None.  The
    caller's state is never touched.  ``depth_guard`` caps recursion depth
    measured by ``len(history)``; tripping it raises GuardExceeded.
    """
    if state.value(literal) != FALSE:
        raise ValueError("algorithm_d requires a false literal")
    guard = (
        depth_guard
        if depth_guard is not None
        else 2 * (2 * state.inst.variable_count) + 1
    )
    if len(history) >= guard:
        state.log.guard_trips += 1
        raise GuardExceeded(
            f"recursion depth guard ({guard}) exceeded freeing {literal}"
        )
    log = state.log
    log.emit("D_ENTER", literal=literal)
    work = state.fork()
    considered: set = set()
    while True:
        pending = [
            key
            for key in work.concepts_focused(-literal)
            if key not in considered and work.concept_type(key) == CPLUS
        ]
        if not pending:
            break
        key = pending[0]
        considered.add(key)
        log.emit("D_CONCEPT", literal=literal, clause=key[0])
        covered = False
        for companion in work.concepts[key]:
            if companion in history:
                continue
            log.emit("D_MEMBER", literal=companion, old=work.value(companion), clause=key[0])
            candidate = None
            if work.value(companion) == FALSE:
                log.emit("D_RECURSE", literal=companion)
                candidate = algorithm_d(
                    work, companion, history | {literal}, guard
                )
                if candidate is None:
                    continue
            basis = candidate if candidate is not None else work
            if basis.value(companion) != FREE:
                # Companions of a C+ concept are free or false; a false
                # one was just freed above, so this cannot trigger.
                continue
            if not algorithm_g(basis.restrict_to(companion), companion):
                continue
            trial = basis if basis is not work else basis.fork()
            if not trial.pin_literal(companion, TRUE):
                continue
            if trial.compute_fixpoint([companion]) is not None:
                continue
            work = trial
            covered = True
            break
        if not covered:
            log.emit("D_RESULT", literal=literal, new="none")
            return None
    res = work.compute_fixpoint([literal])
    if res is not None or work.value(literal) != FREE:
        # The concepts forcing the literal false were all covered, yet the
        # literal did not come out free; surface as a gap, not a success.
        work.log.paper_gaps += 1
        log.emit("D_RESULT", literal=literal, new="gap")
        return None
    log.emit("D_RESULT", literal=literal, new="ok")
    return work
