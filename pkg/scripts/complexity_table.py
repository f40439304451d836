"""Print s_yes, s_no, sr and ss as CSV for the named regular families."""
import argparse
import csv
import json
import sys

from promise_fa import complexity as cx
from promise_fa import problems as pp

FAMILIES = [
    ("ANl", {"N": 4, "l": 1}),
    ("ANl", {"N": 5, "l": 2}),
    ("ANl", {"N": 7, "l": 3}),
    ("ANr1r2", {"N": 7, "r1": 1, "r2": 3}),
    ("appendix", {"p": 4, "q": 6}),
    ("appendix", {"p": 4, "q": 10}),
    ("appendix", {"p": 6, "q": 8}),
    ("Ap", {"p": 7}),
    ("Ap", {"p": 11}),
]

BUILDERS = {"ANl": pp.make_ANl, "ANr1r2": pp.make_ANr1r2, "appendix": pp.make_appendix, "Ap": pp.make_Ap}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-states", type=int, default=None,
                        help="largest ss candidate to try; 0 skips the ss search")
    args = parser.parse_args()
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(cx.CSV_COLUMNS)
    ok = True
    for family, params in FAMILIES:
        report = cx.verify_bounds(BUILDERS[family](**params), ss_max_states=args.max_states)
        ok &= report.bounds_ok
        writer.writerow([family, json.dumps(params, sort_keys=True), report.s_yes, report.s_no,
                         report.sr, "" if report.ss is None else report.ss, str(report.bounds_ok).lower()])
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
