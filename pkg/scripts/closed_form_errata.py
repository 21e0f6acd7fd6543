#!/usr/bin/env python3
"""Printed closed-form action against the direct action, with shrunk witnesses."""
import argparse
import json

from flc.verify import EXPECTED_EXACT, closed_form_check


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out")
    args = ap.parse_args()

    lines = []
    worst = 0
    for fam in ("TLb7", "TLb8"):
        rep = closed_form_check(fam, samples=args.samples, seed=args.seed)
        print(rep.summary())
        for e in rep.extra:
            where = "expected exact" if e["formula"] in EXPECTED_EXACT[fam] else "at risk"
            print(f"    {e['formula']} ({where}): closed form {e['closed_form']} vs direct {e['direct']} "
                  f"at {json.dumps(e['inputs'], sort_keys=True)}")
        lines.append(rep.to_jsonl())
        worst = max(worst, rep.exit_code())
    if args.out:
        with open(args.out, "w") as fh:
            fh.writelines(lines)
    return worst


if __name__ == "__main__":
    raise SystemExit(main())
