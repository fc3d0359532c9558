#!/usr/bin/env python3
"""Benchmark the certificate engine: time the lemma-ladder seeding and the
per-claim certification at each strand count, and report certificate sizes.

Example:
    python3 scripts/certificate_benchmark.py --min 2 --max 5
"""

import argparse
import sys
import time

from braidcover.identities import CertificateEngine, paper_claims
from braidcover.presentations import van_buskirk
from braidcover.rewriting import NotFound, verify_derivation


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--min", type=int, default=2)
    ap.add_argument("--max", type=int, default=5)
    args = ap.parse_args()
    for n in range(args.min, args.max + 1):
        engine = CertificateEngine(n)
        t0 = time.perf_counter()
        engine.seed_all()
        seed_time = time.perf_counter() - t0
        p = van_buskirk(n)
        total_steps = 0
        longest = ("", 0)
        failures = []
        t0 = time.perf_counter()
        for claim in paper_claims(n):
            try:
                d = engine.certify(claim)
            except NotFound:
                failures.append(claim.label)
                continue
            assert verify_derivation(p, d)
            total_steps += len(d.steps)
            if len(d.steps) > longest[1]:
                longest = (claim.label, len(d.steps))
        cert_time = time.perf_counter() - t0
        nclaims = len(paper_claims(n))
        print(f"n={n}: {len(engine.lemmas)} lemmas seeded in {seed_time:.1f}s; "
              f"{nclaims - len(failures)}/{nclaims} claims certified in "
              f"{cert_time:.1f}s; {total_steps} total steps; "
              f"longest certificate: {longest[0]} ({longest[1]} steps)")
        for label in failures:
            print(f"  NOT FOUND within budget: {label}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
