#!/usr/bin/env python3
"""Exactly-one-subset fuzzing for both families, plus stratum histograms."""
import argparse
import time

from flc.verify import partition_fuzz


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--invariance-every", type=int, default=0)
    args = ap.parse_args()

    worst = 0
    for fam in ("TLb7", "TLb8"):
        t0 = time.perf_counter()
        rep = partition_fuzz(fam, samples=args.samples, seed=args.seed, invariance_every=args.invariance_every)
        stats = rep.extra[0]
        print(rep.summary())
        print(f"  {time.perf_counter() - t0:.1f}s, {len(stats['histogram'])} subsets hit"
              + (f", c34 != 0 in {stats['c34_nonzero_fraction']:.1%}" if fam == "TLb8" else ""))
        never = sorted(set(range(1, 31 if fam == "TLb7" else 74)) - {int(k) for k in stats["histogram"]})
        if never:
            print(f"  never sampled: {never}")
        worst = max(worst, rep.exit_code())
    return worst


if __name__ == "__main__":
    raise SystemExit(main())
