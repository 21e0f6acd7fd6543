#!/usr/bin/env python3
"""Round trips C -> t.C -> witness, grouped by subset.

Every witness found is rechecked with the direct action, so the audit only
counts how often the search succeeds and why it gives up.
"""
import argparse
from collections import Counter, defaultdict

from flc.classifier import default_classifier, find_witness
from flc.families import apply_adapted_direct, apply_matrix_direct, is_admissible
from flc.poly import DenominatorVanished
from flc.verify import derive_rng, random_param, random_transform


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=300)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    K = default_classifier()
    for fam in ("TLb7", "TLb8"):
        status = Counter()
        failures = defaultdict(list)
        for i in range(args.samples):
            rng = derive_rng(args.seed, "audit", fam, i)
            C = random_param(fam, rng, admissible=True)
            if not is_admissible(C):
                continue
            C2 = apply_adapted_direct(C, random_transform(C, rng))
            try:
                idx = K.subset_of(C)
            except LookupError:
                continue
            try:
                w = find_witness(C, C2)
            except DenominatorVanished:
                status["denominator"] += 1
                continue
            status[w.status] += 1
            if w.found:
                assert apply_matrix_direct(C, w.matrix) == C2, (C, C2)
            else:
                failures[idx].append(str(C))
        print(fam, dict(status))
        for idx, cs in sorted(failures.items()):
            print(f"  subset {idx}: {len(cs)} without witness, e.g. {cs[0]}")


if __name__ == "__main__":
    main()
