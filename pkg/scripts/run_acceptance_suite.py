#!/usr/bin/env python3
"""Run the full claim catalog and print one PASS/FAIL line per check.

Equivalent to ``meanlab suite paper`` but convenient when working from a
checkout; exits non-zero if any check fails.

    python3 scripts/run_acceptance_suite.py [--seed N] [--verbose]
"""

import argparse
import sys
import time

from meanlab.suite import run_suite


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=0,
                        help="grid jitter seed (0 = canonical grid)")
    parser.add_argument("--verbose", action="store_true",
                        help="print per-item details for every check")
    args = parser.parse_args()

    start = time.perf_counter()
    outcomes = run_suite(seed=args.seed)
    elapsed = time.perf_counter() - start

    for outcome in outcomes:
        print(("PASS" if outcome.passed else "FAIL") + f" {outcome.check_id}")
        if args.verbose or not outcome.passed:
            for detail in outcome.details:
                print(f"    {detail}")

    n_pass = sum(o.passed for o in outcomes)
    print(f"{n_pass}/{len(outcomes)} checks passed in {elapsed:.2f}s")
    return 0 if n_pass == len(outcomes) else 1


if __name__ == "__main__":
    sys.exit(main())
