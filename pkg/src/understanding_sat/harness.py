"""Differential testing: generators, adjudication, shrinking, curve fits.

The harness runs the main procedure and a reference oracle on the same
instance and files the pair into one of five bins: AgreeSat, AgreeUnsat,
FalseSat, FalseUnsat, Anomaly.  Disagreements and anomalies become
self-contained counterexample records (DIMACS text plus the exact run
options) that can be replayed and shrunk to 1-minimal form later.

Instance sources are a seeded uniform random model and an exhaustive
enumerator over every well-formed instance up to 4 variables.  Operation
counts from adjudicated runs feed a log-log least-squares fit used to
check growth-rate claims.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field

from .cnf import Instance, build_instance, emit_dimacs, parse_dimacs
from .oracle import OracleVerdict, brute_force, dpll
from .solver import SolveConfig, SolverOutcome, solve

DISAGREEMENT_KINDS = ("FalseSat", "FalseUnsat", "Anomaly")


@dataclass
class GenSpec:
    """Parameters for one random instance draw."""

    n: int
    m: int
    seed: int
    model: str = "uniform-3sat"

    def validate(self) -> None:
        if self.model != "uniform-3sat":
            raise ValueError(f"unknown model {self.model!r}")
        if self.n < 0 or self.m < 0:
            raise ValueError("n and m must be non-negative")
        capacity = 8 * math.comb(self.n, 3)
        if self.m > capacity:
            raise ValueError(
                f"cannot draw {self.m} distinct clauses over {self.n} variables"
                f" (capacity {capacity})"
            )


def gen_random(spec: GenSpec) -> Instance:
    """Uniform model: three distinct variables, independent polarities.

    Clauses duplicating an earlier literal set are redrawn, so the result
    always has exactly ``spec.m`` clauses.
    """
    spec.validate()
    rng = random.Random(spec.seed)
    seen: set[frozenset[int]] = set()
    clauses: list[tuple[int, int, int]] = []
    while len(clauses) < spec.m:
        vars_ = sorted(rng.sample(range(1, spec.n + 1), 3))
        lits = tuple(v if rng.random() < 0.5 else -v for v in vars_)
        key = frozenset(lits)
        if key in seen:
            continue
        seen.add(key)
        clauses.append(lits)
    return build_instance(spec.n, clauses)


def enumerate_small(max_n: int, max_m: int):
    """Yield every instance with at most ``max_m`` clauses whose variable
    support is exactly {1..n}, for each n up to ``max_n``.

    The clause universe for n variables is every 3-subset of the 2n
    literals (complementary pairs inside a clause are legal), taken in a
    fixed canonical order, so the stream is deterministic.
    """
    if max_n > 4:
        raise ValueError("exhaustive enumeration capped at 4 variables")
    for n in range(0, max_n + 1):
        literals: list[int] = []
        for v in range(1, n + 1):
            literals.extend((v, -v))
        universe = list(itertools.combinations(literals, 3))
        for m in range(0, max_m + 1):
            for combo in itertools.combinations(universe, m):
                support = {abs(l) for c in combo for l in c}
                if len(support) == n:
                    yield build_instance(n, list(combo))


def fuzz_specs(
    master_seed: int,
    n_values=(5, 6, 7, 8, 9, 10, 11, 12),
    ratios=(2.0, 4.27, 6.0),
    reps: int = 210,
) -> list[GenSpec]:
    """The mixed random corpus: every n crossed with sparse, critical and
    dense clause ratios, ``reps`` draws each, seeds derived from one
    master seed."""
    specs = []
    i = 0
    for n in n_values:
        for ratio in ratios:
            for _ in range(reps):
                specs.append(GenSpec(n=n, m=max(1, round(ratio * n)), seed=master_seed + i))
                i += 1
    return specs


def _config_dict(cfg: SolveConfig) -> dict:
    return {
        "clause_order": cfg.clause_order,
        "order_seed": cfg.order_seed,
        "default_free": cfg.default_free,
        "trace": cfg.trace,
        "depth_guard_factor": cfg.depth_guard_factor,
    }


def run_oracle(inst: Instance, oracle: str) -> OracleVerdict:
    if oracle == "auto":
        oracle = "brute" if inst.variable_count <= 12 else "dpll"
    if oracle == "brute":
        return brute_force(inst)
    if oracle == "dpll":
        return dpll(inst)
    raise ValueError(f"unknown oracle {oracle!r}")


def classify(outcome: SolverOutcome, verdict: OracleVerdict) -> str:
    if outcome.kind == "anomaly":
        return "Anomaly"
    if outcome.kind == "sat":
        return "AgreeSat" if verdict.sat else "FalseSat"
    return "FalseUnsat" if verdict.sat else "AgreeUnsat"


@dataclass
class CounterexampleRecord:
    """A replayable disagreement: everything needed to rerun both sides."""

    dimacs: str
    config: dict
    solver_outcome: dict
    oracle_verdict: dict
    kind: str
    minimized: bool = False

    def as_dict(self) -> dict:
        return {
            "dimacs": self.dimacs,
            "config": self.config,
            "solver_outcome": self.solver_outcome,
            "oracle_verdict": self.oracle_verdict,
            "kind": self.kind,
            "minimized": self.minimized,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CounterexampleRecord":
        return cls(
            dimacs=data["dimacs"],
            config=dict(data["config"]),
            solver_outcome=dict(data["solver_outcome"]),
            oracle_verdict=dict(data["oracle_verdict"]),
            kind=data["kind"],
            minimized=bool(data.get("minimized", False)),
        )


@dataclass
class ComplexitySample:
    n: int
    m: int
    ops: int
    kind: str


@dataclass
class DiffReport:
    total: int = 0
    counts: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)
    samples: list = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return all(self.counts.get(kind, 0) == 0 for kind in DISAGREEMENT_KINDS)

    def as_dict(self) -> dict:
        return {
            "total": self.total,
            "counts": dict(sorted(self.counts.items())),
            "clean": self.clean,
            "counterexamples": [r.as_dict() for r in self.counterexamples],
        }


def diff_run(
    instances,
    cfg: SolveConfig | None = None,
    oracle: str = "auto",
    keep_samples: bool = True,
) -> DiffReport:
    """Adjudicate each instance against the chosen oracle (``auto`` picks
    brute force up to 12 variables, the backtracker beyond)."""
    cfg = cfg if cfg is not None else SolveConfig()
    report = DiffReport()
    for inst in instances:
        outcome = solve(inst, cfg)
        verdict = run_oracle(inst, oracle)
        kind = classify(outcome, verdict)
        report.total += 1
        report.counts[kind] = report.counts.get(kind, 0) + 1
        if kind in DISAGREEMENT_KINDS:
            report.counterexamples.append(
                CounterexampleRecord(
                    dimacs=emit_dimacs(inst),
                    config=_config_dict(cfg),
                    solver_outcome=outcome.as_dict(),
                    oracle_verdict=verdict.as_dict(),
                    kind=kind,
                )
            )
        if keep_samples and outcome.kind in ("sat", "unsat"):
            report.samples.append(
                ComplexitySample(
                    n=inst.variable_count,
                    m=len(inst.clauses),
                    ops=outcome.ops,
                    kind=outcome.kind,
                )
            )
    return report


def replay(record: CounterexampleRecord) -> str:
    """Rerun both sides from the stored record; returns the fresh bin."""
    inst = parse_dimacs(record.dimacs)
    cfg = SolveConfig(**record.config)
    outcome = solve(inst, cfg)
    verdict = run_oracle(inst, record.oracle_verdict.get("method", "auto"))
    return classify(outcome, verdict)


def minimize(record: CounterexampleRecord) -> CounterexampleRecord:
    """Greedy clause removal with restart until 1-minimal.

    Keeps removing any single clause whose removal preserves the record's
    bin; at the fixpoint no single-clause removal reproduces it.
    """
    inst = parse_dimacs(record.dimacs)
    cfg = SolveConfig(**record.config)
    method = record.oracle_verdict.get("method", "auto")
    lits = [c.literals for c in inst.clauses]

    def bin_of(clause_lits) -> str:
        cand = build_instance(inst.variable_count, clause_lits)
        return classify(solve(cand, cfg), run_oracle(cand, method))

    changed = True
    while changed:
        changed = False
        for i in range(len(lits)):
            candidate = lits[:i] + lits[i + 1 :]
            if bin_of(candidate) == record.kind:
                lits = candidate
                changed = True
                break
    final = build_instance(inst.variable_count, lits)
    outcome = solve(final, cfg)
    verdict = run_oracle(final, method)
    return CounterexampleRecord(
        dimacs=emit_dimacs(final),
        config=dict(record.config),
        solver_outcome=outcome.as_dict(),
        oracle_verdict=verdict.as_dict(),
        kind=record.kind,
        minimized=True,
    )


@dataclass
class FitResult:
    exponent: float
    intercept: float
    r_squared: float
    sample_count: int
    m_min: int
    m_max: int


def fit_complexity(samples, min_samples: int = 5, min_spread: float = 4.0) -> FitResult:
    """Least-squares fit of log(ops) against log(m) over decided runs.

    The slope estimates the growth exponent.  Requires at least
    ``min_samples`` usable points spanning a ``min_spread`` factor in m,
    otherwise the fit would be meaningless and a ValueError is raised.
    """
    usable = [s for s in samples if s.kind in ("sat", "unsat") and s.ops > 0 and s.m > 0]
    if len(usable) < min_samples:
        raise ValueError(f"need at least {min_samples} decided samples, got {len(usable)}")
    ms = [s.m for s in usable]
    if max(ms) / min(ms) < min_spread:
        raise ValueError(
            f"clause counts span only {max(ms) / min(ms):.2f}x, need {min_spread}x"
        )
    xs = [math.log(s.m) for s in usable]
    ys = [math.log(s.ops) for s in usable]
    k = len(usable)
    mean_x = sum(xs) / k
    mean_y = sum(ys) / k
    sxx = sum((x - mean_x) ** 2 for x in xs)
    sxy = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    slope = sxy / sxx
    intercept = mean_y - slope * mean_x
    ss_res = sum((y - (intercept + slope * x)) ** 2 for x, y in zip(xs, ys))
    ss_tot = sum((y - mean_y) ** 2 for y in ys)
    if ss_tot == 0.0:
        r_squared = 1.0 if ss_res == 0.0 else 0.0
    else:
        r_squared = 1.0 - ss_res / ss_tot
    return FitResult(
        exponent=slope,
        intercept=intercept,
        r_squared=r_squared,
        sample_count=k,
        m_min=min(ms),
        m_max=max(ms),
    )


def bench_samples(pairs, reps: int, master_seed: int, cfg: SolveConfig | None = None):
    """Run the solver on ``reps`` random draws for each (n, m) pair and
    collect operation counts."""
    cfg = cfg if cfg is not None else SolveConfig()
    samples = []
    i = 0
    for n, m in pairs:
        for _ in range(reps):
            inst = gen_random(GenSpec(n=n, m=m, seed=master_seed + i))
            i += 1
            outcome = solve(inst, cfg)
            samples.append(
                ComplexitySample(n=n, m=len(inst.clauses), ops=outcome.ops, kind=outcome.kind)
            )
    return samples
