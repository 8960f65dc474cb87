#!/usr/bin/env python3
"""Run every registered scenario and print one verdict line each.

Exit code 0 when all scenarios pass, 1 otherwise.
"""

import argparse
import sys
import time

from hypermet import scenarios


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=scenarios.DEFAULT_SEED)
    ap.add_argument("names", nargs="*", help="scenario names (default: all)")
    args = ap.parse_args()

    names = args.names or scenarios.available()
    failed = []
    for name in names:
        t0 = time.time()
        report = scenarios.run(name, seed=args.seed)
        dt = time.time() - t0
        verdict = "PASS" if report.passed else "FAIL"
        print(f"[{verdict}] {name:18s} "
              f"({sum(a.passed for a in report.assertions)}/{len(report.assertions)} "
              f"assertions, {dt:.2f}s)")
        for a in report.assertions:
            if not a.passed:
                print(f"         failed: {a.name} -- {a.detail}")
        if not report.passed:
            failed.append(name)
    if failed:
        print(f"\n{len(failed)} scenario(s) failed: {', '.join(failed)}")
        return 1
    print(f"\nall {len(names)} scenarios passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
