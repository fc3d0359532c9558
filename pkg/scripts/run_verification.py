#!/usr/bin/env python3
"""Run the full verification suite over a range of strand counts and
print one markdown report per strand count (or JSON with --json).

Example:
    python3 scripts/run_verification.py --min 2 --max 4
"""

import argparse
import sys
import time

from braidcover.atlas import VerificationFailure, verify_suite
from braidcover.rewriting import SearchBudget


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--min", type=int, default=2)
    ap.add_argument("--max", type=int, default=4)
    ap.add_argument("--max-candidates", type=int, default=None,
                    help="override the certificate search budget")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    budget = None
    if args.max_candidates is not None:
        budget = SearchBudget(max_candidates=args.max_candidates)
    any_gaps = False
    for n in range(args.min, args.max + 1):
        t0 = time.perf_counter()
        try:
            report = verify_suite(n, budget)
        except VerificationFailure as exc:
            print(f"n={n}: VERIFICATION FAILURE: {exc}", file=sys.stderr)
            return 1
        dt = time.perf_counter() - t0
        print(report.to_json() if args.json else report.to_markdown())
        print(f"[n={n}] completed in {dt:.1f}s; "
              f"all_verified={report.all_verified} has_gaps={report.has_gaps}\n")
        any_gaps = any_gaps or report.has_gaps or not report.all_verified
    return 2 if any_gaps else 0


if __name__ == "__main__":
    sys.exit(main())
