"""Command line front end.

Subcommands: ``solve`` and ``oracle`` decide a single DIMACS file;
``fuzz`` and ``enumerate`` adjudicate whole corpora and write JSONL
reports with a CSV summary next to them; ``minimize`` shrinks a stored
counterexample record; ``bench`` collects operation counts and fits a
growth exponent.

Exit codes: 10 satisfiable, 20 unsatisfiable, 30 anomaly, 0 for a
harness command that ran to completion, 1 for usage or input errors.
Stdout carries only machine-readable output (s/v lines or one JSON
summary line); diagnostics go to stderr.  Reruns with equal arguments
and environment produce byte-identical files.

The environment variable ``UNDERSTANDING_SAT_SEED`` overrides any
``--seed`` argument.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from .cnf import DimacsError, parse_dimacs
from .harness import (
    DISAGREEMENT_KINDS,
    CounterexampleRecord,
    GenSpec,
    bench_samples,
    classify,
    enumerate_small,
    fit_complexity,
    gen_random,
    minimize,
    run_oracle,
)
from .solver import SolveConfig, solve

EXIT_SAT = 10
EXIT_UNSAT = 20
EXIT_ANOMALY = 30
EXIT_OK = 0
EXIT_USAGE = 1


def _json_line(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _write_jsonl(path: str, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for row in rows:
            fh.write(_json_line(row) + "\n")


def _write_summary_csv(path: str, counts: dict, total: int) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["kind", "count"])
        for kind in sorted(counts):
            writer.writerow([kind, counts[kind]])
        writer.writerow(["total", total])


def _effective_seed(seed: int | None) -> int | None:
    env = os.environ.get("UNDERSTANDING_SAT_SEED")
    if env is not None:
        return int(env)
    return seed


def _read_instance(path: str):
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    return parse_dimacs(text)


def _print_model(assignment, n: int) -> None:
    lits = assignment.as_signed_literals(n)
    print("v " + " ".join(str(l) for l in lits + [0]))


def _cmd_solve(args) -> int:
    inst = _read_instance(args.file)
    cfg = SolveConfig(
        clause_order=args.order,
        order_seed=_effective_seed(args.seed),
        default_free=args.default_free,
        trace=args.trace,
    )
    outcome = solve(inst, cfg)
    print(f"c ops {outcome.ops}", file=sys.stderr)
    if args.trace and outcome.trace is not None:
        for event in outcome.trace:
            print(_json_line(event), file=sys.stderr)
    if outcome.kind == "sat":
        print("s SATISFIABLE")
        if not args.quiet:
            _print_model(outcome.assignment, inst.variable_count)
        return EXIT_SAT
    if outcome.kind == "unsat":
        print(f"c failing-clause {outcome.failing_clause}")
        print("s UNSATISFIABLE")
        return EXIT_UNSAT
    print(f"s ANOMALY {outcome.anomaly}")
    return EXIT_ANOMALY


def _cmd_oracle(args) -> int:
    inst = _read_instance(args.file)
    verdict = run_oracle(inst, args.method)
    print(f"c nodes {verdict.nodes} method {verdict.method}", file=sys.stderr)
    if verdict.sat:
        print("s SATISFIABLE")
        if not args.quiet:
            _print_model(verdict.model, inst.variable_count)
        return EXIT_SAT
    print("s UNSATISFIABLE")
    return EXIT_UNSAT


def _adjudicate(items, cfg: SolveConfig, oracle: str):
    """items: iterable of (meta, instance).  Returns rows, counts, cexes."""
    rows = []
    counts: dict[str, int] = {}
    cexes = []
    from .cnf import emit_dimacs

    for meta, inst in items:
        outcome = solve(inst, cfg)
        verdict = run_oracle(inst, oracle)
        kind = classify(outcome, verdict)
        counts[kind] = counts.get(kind, 0) + 1
        row = dict(meta)
        row.update(
            kind=kind,
            solver=outcome.kind,
            oracle_sat=verdict.sat,
            ops=outcome.ops,
        )
        rows.append(row)
        if kind in DISAGREEMENT_KINDS:
            cexes.append(
                CounterexampleRecord(
                    dimacs=emit_dimacs(inst),
                    config={
                        "clause_order": cfg.clause_order,
                        "order_seed": cfg.order_seed,
                        "default_free": cfg.default_free,
                        "trace": cfg.trace,
                        "depth_guard_factor": cfg.depth_guard_factor,
                    },
                    solver_outcome=outcome.as_dict(),
                    oracle_verdict=verdict.as_dict(),
                    kind=kind,
                )
            )
    return rows, counts, cexes


def _finish_corpus(args, rows, counts, cexes) -> int:
    total = len(rows)
    if args.out:
        _write_jsonl(args.out, rows)
        _write_summary_csv(args.out + ".summary.csv", counts, total)
    if args.cex_dir and cexes:
        os.makedirs(args.cex_dir, exist_ok=True)
        for i, record in enumerate(cexes):
            path = os.path.join(args.cex_dir, f"cex-{i:05d}.json")
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(_json_line(record.as_dict()) + "\n")
    clean = all(counts.get(k, 0) == 0 for k in DISAGREEMENT_KINDS)
    print(
        _json_line(
            {"total": total, "counts": dict(sorted(counts.items())), "clean": clean}
        )
    )
    return EXIT_OK


def _cmd_fuzz(args) -> int:
    seed = _effective_seed(args.seed)
    if args.m is not None:
        m = args.m
    else:
        m = max(1, round(args.ratio * args.n))
    cfg = SolveConfig(clause_order=args.order, order_seed=seed, default_free=args.default_free)
    items = []
    for i in range(args.count):
        spec = GenSpec(n=args.n, m=m, seed=seed + i)
        items.append(
            ({"i": i, "n": spec.n, "m": spec.m, "seed": spec.seed}, gen_random(spec))
        )
    rows, counts, cexes = _adjudicate(items, cfg, args.oracle)
    return _finish_corpus(args, rows, counts, cexes)


def _cmd_enumerate(args) -> int:
    cfg = SolveConfig(default_free=args.default_free)
    items = (
        ({"i": i, "n": inst.variable_count, "m": len(inst.clauses)}, inst)
        for i, inst in enumerate(enumerate_small(args.max_n, args.max_m))
    )
    rows, counts, cexes = _adjudicate(items, cfg, args.oracle)
    return _finish_corpus(args, rows, counts, cexes)


def _cmd_minimize(args) -> int:
    with open(args.record, "r", encoding="utf-8") as fh:
        record = CounterexampleRecord.from_dict(json.load(fh))
    shrunk = minimize(record)
    text = _json_line(shrunk.as_dict())
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


def _parse_pairs(spec: str):
    pairs = []
    for chunk in spec.split(","):
        n_str, _, m_str = chunk.partition(":")
        pairs.append((int(n_str), int(m_str)))
    return pairs


def _cmd_bench(args) -> int:
    seed = _effective_seed(args.seed)
    pairs = _parse_pairs(args.pairs)
    samples = bench_samples(pairs, args.reps, seed)
    if args.out:
        _write_jsonl(
            args.out,
            [{"n": s.n, "m": s.m, "ops": s.ops, "kind": s.kind} for s in samples],
        )
    try:
        fit = fit_complexity(samples)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out + ".summary.csv", "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(
                ["exponent", "intercept", "r_squared", "sample_count", "m_min", "m_max"]
            )
            writer.writerow(
                [
                    f"{fit.exponent:.6f}",
                    f"{fit.intercept:.6f}",
                    f"{fit.r_squared:.6f}",
                    fit.sample_count,
                    fit.m_min,
                    fit.m_max,
                ]
            )
    print(
        _json_line(
            {
                "exponent": round(fit.exponent, 6),
                "r_squared": round(fit.r_squared, 6),
                "sample_count": fit.sample_count,
                "m_min": fit.m_min,
                "m_max": fit.m_max,
            }
        )
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="usat",
        description="Context-propagation 3SAT procedure with differential adjudication.",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("solve", help="decide one DIMACS file with the main procedure")
    p.add_argument("file", help="DIMACS CNF path, or - for stdin")
    p.add_argument("--order", choices=["input", "perm"], default="input")
    p.add_argument("--seed", type=int, default=0, help="seed for --order perm")
    p.add_argument("--default-free", type=int, choices=[0, 1], default=0)
    p.add_argument("--trace", action="store_true", help="dump trace events to stderr")
    p.add_argument("--quiet", action="store_true", help="suppress the v line")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("oracle", help="decide one DIMACS file with a reference oracle")
    p.add_argument("file", help="DIMACS CNF path, or - for stdin")
    p.add_argument("--method", choices=["auto", "brute", "dpll"], default="auto")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("fuzz", help="adjudicate random instances against an oracle")
    p.add_argument("--n", type=int, required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--m", type=int, default=None)
    group.add_argument("--ratio", type=float, default=4.27, help="m = round(ratio * n)")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--order", choices=["input", "perm"], default="input")
    p.add_argument("--default-free", type=int, choices=[0, 1], default=0)
    p.add_argument("--oracle", choices=["auto", "brute", "dpll"], default="auto")
    p.add_argument("--out", default=None, help="JSONL report path")
    p.add_argument("--cex-dir", default=None, help="directory for counterexample records")
    p.set_defaults(func=_cmd_fuzz)

    p = sub.add_parser("enumerate", help="adjudicate every small instance exhaustively")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--max-m", type=int, required=True)
    p.add_argument("--default-free", type=int, choices=[0, 1], default=0)
    p.add_argument("--oracle", choices=["auto", "brute", "dpll"], default="auto")
    p.add_argument("--out", default=None)
    p.add_argument("--cex-dir", default=None)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("minimize", help="shrink a stored counterexample record")
    p.add_argument("record", help="JSON record path")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_minimize)

    p = sub.add_parser("bench", help="collect operation counts and fit a growth exponent")
    p.add_argument("--pairs", required=True, help="comma list of n:m, e.g. 5:20,10:40")
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except DimacsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
