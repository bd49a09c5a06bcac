#!/usr/bin/env python3
"""Run every golden suite in the corpus and report timings."""

import argparse
import sys
import time

from kahan_aromas.corpus import GOLDEN_SUITES, golden_suite


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("names", nargs="*", help="subset of suites (default: all)")
    args = parser.parse_args()
    names = args.names or sorted(GOLDEN_SUITES)
    failures = 0
    for name in names:
        t0 = time.time()
        checks = golden_suite(name, seed=args.seed)
        dt = time.time() - t0
        for c in checks:
            mark = "PASS" if c.passed else "FAIL"
            print(f"[{mark}] {name}: {c.name}")
            failures += not c.passed
        print(f"       ({name}: {dt:.1f}s)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
