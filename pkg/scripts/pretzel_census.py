#!/usr/bin/env python3
"""Census of odd pretzel knots: doubly slice classification at desk scale.

Enumerates strand multisets (verdicts are mutation invariant) for a given
strand count and bound, tabulates verdicts and failure reasons, and prints
the doubly slice family it finds.

Usage: python scripts/pretzel_census.py [--strands 3 5] [--bound 7]
"""

import argparse
import sys
from collections import Counter
from itertools import combinations_with_replacement
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from sfs4.pretzel import OddPretzel, doubly_slice_classify


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--strands", type=int, nargs="+", default=[3, 5])
    ap.add_argument("--bound", type=int, default=7)
    args = ap.parse_args()

    values = [c for c in range(-args.bound, args.bound + 1) if c % 2]
    reasons = Counter()
    positives = []
    total = 0
    for k in args.strands:
        if k % 2 == 0:
            print(f"skipping k = {k}: even strand counts are links", file=sys.stderr)
            continue
        for strands in combinations_with_replacement(values, k):
            total += 1
            verdict = doubly_slice_classify(OddPretzel(strands))
            if verdict.is_doubly_slice:
                positives.append(strands)
                reasons["doubly slice"] += 1
            else:
                reasons[verdict.failed_condition] += 1

    print(f"{total} odd pretzel knots (multisets), |c_i| <= {args.bound}, k in {args.strands}")
    for reason, count in reasons.most_common():
        print(f"  {reason:30s} {count}")
    print("\ndoubly slice up to mutation:")
    for strands in positives:
        print("  P(" + ",".join(map(str, strands)) + ")")


if __name__ == "__main__":
    main()
