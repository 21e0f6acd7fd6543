#!/usr/bin/env python3
"""Orbit invariance of the parametric rows, with a per-row breakdown.

    python3 scripts/orbit_invariance.py --samples 50 --transforms 50 --out orbit.jsonl
"""
import argparse
import time
from collections import defaultdict

from flc.verify import verify_tables


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--samples", type=int, default=50)
    ap.add_argument("--transforms", type=int, default=50)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out")
    args = ap.parse_args()

    t0 = time.perf_counter()
    rep = verify_tables(seed=args.seed, samples=args.samples, transforms=args.transforms,
                        tables=("T2", "T4"), workers=args.workers)
    elapsed = time.perf_counter() - t0

    by_row = defaultdict(list)
    for r in rep.results:
        if r.check.startswith("orbit-invariance") and not r.ok:
            by_row[(r.table, int(r.row))].append(r)
    print(f"{len(rep.rows())} parametric rows, {args.samples} x {args.transforms} each, {elapsed:.1f}s")
    for (table, row), rs in sorted(by_row.items()):
        tags = ", ".join(f"{r.check.split(':')[1]}{'' if r.known else ' (NEW)'}" for r in rs)
        print(f"  {table} row {row:>2}: {tags}")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(rep.to_jsonl())
    return rep.exit_code()


if __name__ == "__main__":
    raise SystemExit(main())
