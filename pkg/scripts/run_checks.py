#!/usr/bin/env python3
"""Run the identity suites and print a timing table.

Usage: python scripts/run_checks.py [--suite NAME] [--weight-bound K]
       [--precision P] [--json]
"""
import argparse
import json
import sys
import time

from arbozeta.suites import SUITES, run_suite


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--suite", default="all")
    parser.add_argument("--weight-bound", type=int, default=6)
    parser.add_argument("--precision", type=float, default=1e-8)
    parser.add_argument("--json", action="store_true")
    args = parser.parse_args()

    names = list(SUITES) if args.suite == "all" else [args.suite]
    report = []
    failures = 0
    for name in names:
        start = time.monotonic()
        entries = run_suite(name, args.weight_bound, args.precision)
        elapsed = time.monotonic() - start
        bad = sum(1 for e in entries if not e["pass"])
        failures += bad
        report.extend(entries)
        if not args.json:
            status = "ok" if not bad else f"{bad} FAILED"
            print(f"{name:<22} {len(entries):>4} checks  {elapsed:7.1f}s  {status}")
            for entry in entries:
                if not entry["pass"]:
                    print(f"    FAIL {entry['instance']}")
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print(f"total: {len(report)} checks, {failures} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
