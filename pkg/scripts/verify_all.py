"""Run every theorem suite with its default parameters and print a summary.

Exit status is 1 when any suite reports a failing check.
"""
import argparse
import json
import sys
import time

from promise_fa.theorems import SUITES, verify_theorem


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="emit one JSON report per suite")
    args = parser.parse_args()
    failed = []
    for theorem in SUITES:
        start = time.perf_counter()
        report = verify_theorem(theorem)
        elapsed = time.perf_counter() - start
        if args.json:
            print(json.dumps(report.to_dict(), sort_keys=True, default=str))
        else:
            status = "PASS" if report.passed else "FAIL"
            print(f"{theorem:<15} {status}  {len(report.checks):3d} checks  {elapsed:6.2f}s")
            for check in report.failures:
                print(f"    failing: {check.name} ({check.detail})")
        if not report.passed:
            failed.append(theorem)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
