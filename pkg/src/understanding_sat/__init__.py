"""Understanding-based 3SAT decision procedure with a differential-testing harness.

The package has three layers: a propagation engine that maintains a
three-valued map over literals driven by per-clause contexts (`engine`,
`algorithms`, `solver`), two independent reference oracles (`oracle`), and
a harness that generates corpora, diffs the solver against the oracles,
shrinks counterexamples, and fits operation-count growth (`harness`).
"""

from .cnf import (
    Assignment,
    Clause,
    DimacsError,
    Instance,
    build_instance,
    emit_dimacs,
    evaluate,
    negate,
    parse_dimacs,
)
from .engine import (
    CPLUS,
    CSTAR,
    FALSE,
    FREE,
    TRUE,
    Contradiction,
    EngineState,
    GuardExceeded,
    RunLog,
    concept_set_type,
    concept_type_of,
)
from .algorithms import algorithm_d, algorithm_g, lemma_g_conditions
from .solver import SolveConfig, SolverOutcome, extract_assignment, solve
from .oracle import OracleVerdict, brute_force, dpll
from .harness import (
    ComplexitySample,
    CounterexampleRecord,
    DiffReport,
    GenSpec,
    diff_run,
    enumerate_small,
    fit_complexity,
    gen_random,
    minimize,
    replay,
)

__all__ = [
    "Assignment",
    "Clause",
    "ComplexitySample",
    "Contradiction",
    "CounterexampleRecord",
    "CPLUS",
    "CSTAR",
    "DiffReport",
    "DimacsError",
    "EngineState",
    "FALSE",
    "FREE",
    "GenSpec",
    "GuardExceeded",
    "Instance",
    "OracleVerdict",
    "RunLog",
    "SolveConfig",
    "SolverOutcome",
    "TRUE",
    "algorithm_d",
    "algorithm_g",
    "brute_force",
    "build_instance",
    "concept_set_type",
    "concept_type_of",
    "diff_run",
    "dpll",
    "emit_dimacs",
    "enumerate_small",
    "evaluate",
    "extract_assignment",
    "fit_complexity",
    "gen_random",
    "lemma_g_conditions",
    "minimize",
    "negate",
    "parse_dimacs",
    "replay",
    "solve",
]
