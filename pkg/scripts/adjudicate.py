#!/usr/bin/env python3
"""Full adjudication run: exhaustive small corpus plus a seeded random
corpus, with every disagreement minimized to a 1-minimal core and
replayed.  Writes JSONL artifacts and prints a summary you can cite.

Usage:
    python3 scripts/adjudicate.py --out-dir runs/adjudication
    python3 scripts/adjudicate.py --skip-minimize      # quick look
"""

import argparse
import collections
import json
import os
import sys
import time

from understanding_sat.cnf import parse_dimacs
from understanding_sat.harness import (
    diff_run,
    enumerate_small,
    fuzz_specs,
    gen_random,
    minimize,
    replay,
)

MASTER_SEED = 20260814


def _dump_records(path, records):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for rec in records:
            fh.write(json.dumps(rec.as_dict(), sort_keys=True) + "\n")


def run_corpus(label, instances, out_dir, skip_minimize):
    t0 = time.time()
    report = diff_run(instances, keep_samples=False)
    elapsed = time.time() - t0
    print(f"[{label}] {report.total} instances in {elapsed:.1f}s")
    for kind in sorted(report.counts):
        print(f"[{label}]   {kind}: {report.counts[kind]}")
    print(f"[{label}]   clean: {report.clean}")

    if out_dir:
        _dump_records(os.path.join(out_dir, f"{label}-counterexamples.jsonl"),
                      report.counterexamples)

    if skip_minimize or not report.counterexamples:
        return report

    t0 = time.time()
    cores = []
    sizes = collections.Counter()
    for rec in report.counterexamples:
        shrunk = minimize(rec)
        assert replay(shrunk) == rec.kind, "minimized core failed to replay"
        cores.append(shrunk)
        sizes[len(parse_dimacs(shrunk.dimacs).clauses)] += 1
    elapsed = time.time() - t0
    print(f"[{label}] minimized {len(cores)} cores in {elapsed:.1f}s; "
          f"sizes {dict(sorted(sizes.items()))}")
    if out_dir:
        _dump_records(os.path.join(out_dir, f"{label}-cores.jsonl"), cores)
    return report


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out-dir", default=None, help="artifact directory")
    parser.add_argument("--seed", type=int, default=MASTER_SEED)
    parser.add_argument("--skip-minimize", action="store_true")
    parser.add_argument("--skip-fuzz", action="store_true")
    args = parser.parse_args(argv)

    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)

    run_corpus("exhaustive-n3", enumerate_small(3, 4), args.out_dir,
               args.skip_minimize)
    if not args.skip_fuzz:
        instances = (gen_random(s) for s in fuzz_specs(args.seed))
        run_corpus("fuzz", instances, args.out_dir, args.skip_minimize)
    return 0


if __name__ == "__main__":
    sys.exit(main())
