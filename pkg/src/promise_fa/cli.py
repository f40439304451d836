"""Command-line workbench: ``promise-fa <subcommand> ...``.

Exit codes: 0 success / PASS, 1 a check failed, 2 usage or input error.
Words accept exponent shorthand (``a3`` is ``aaa``, ``(ab2#)3`` repeats a block).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import classical as ca
from . import complexity as cx
from . import decision as dp
from . import jsonio
from . import problems as pp
from . import quantum as qa
from .errors import AutomatonError, SchemaError
from .theorems import SUITES, verify_theorem

EXIT_OK, EXIT_CHECK, EXIT_USAGE = 0, 1, 2
PARAM_NAMES = ("N", "l", "p", "q", "r1", "r2", "eps")


class UsageError(Exception):
    pass


def fmt_number(x) -> str:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, bool) or x is None:
        return json.dumps(x)
    if isinstance(x, float):
        return format(x, ".12g")
    return str(x)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return fmt_number(x)
    if isinstance(x, float):
        return float(fmt_number(x))
    return x


class Output:
    """Collects text and writes it to --out or stdout at the end."""

    def __init__(self, fmt: str, path: str | None):
        self.fmt = fmt
        self.path = path
        self.parts: list[str] = []

    def json(self, obj):
        self.parts.append(json.dumps(_jsonable(obj), indent=2, sort_keys=True, ensure_ascii=False))

    def rows(self, header, rows):
        if self.fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(header)
            w.writerows([["" if c is None else fmt_number(c) for c in row] for row in rows])
            self.parts.append(buf.getvalue().rstrip("\n"))
        else:
            cells = [list(header)] + [[fmt_number(c) for c in row] for row in rows]
            widths = [max(len(str(r[i])) for r in cells) for i in range(len(header))]
            lines = ["  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
            self.parts.append("\n".join(lines))

    def text(self, s: str):
        self.parts.append(s)

    def flush(self):
        data = "\n".join(self.parts) + "\n"
        if self.path:
            Path(self.path).write_text(data, encoding="utf-8")
        else:
            sys.stdout.write(data)


# -- argument helpers --------------------------------------------------------------


def _number(text: str):
    try:
        return int(text)
    except ValueError:
        try:
            return float(Fraction(text))
        except (ValueError, ZeroDivisionError):
            raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _params(args) -> dict:
    return {k: getattr(args, k) for k in PARAM_NAMES if getattr(args, k, None) is not None}


def _words(args) -> list[str]:
    words = []
    if getattr(args, "word", None) is not None:
        words.append(pp.expand_word(args.word))
    if getattr(args, "word_file", None):
        for line in Path(args.word_file).read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if line:
                words.append(pp.expand_word(line))
    if not words:
        raise UsageError("give --word or --word-file")
    return words


def _machine(path):
    if not path:
        raise UsageError("--machine is required")
    return jsonio.load_machine(path)


def _load_problem(args):
    if getattr(args, "problem", None):
        return jsonio.problem_from_json(jsonio.load_json(args.problem))
    if getattr(args, "family", None):
        return pp.make_family(args.family, _params(args))
    raise UsageError("give --problem FILE or --family NAME")


# -- subcommands -----------------------------------------------------------------


def cmd_run(args, out: Output) -> int:
    m = _machine(args.machine)
    if not isinstance(m, ca.Dfa):
        raise UsageError("run needs a dfa or pvdfa; use prob for probabilistic and quantum machines")
    rows = []
    for w in _words(args):
        state = m.run(w)
        verdict = m.classify(w) if isinstance(m, ca.PvDfa) else (ca.Verdict.ACCEPT if state in m.accepting else ca.Verdict.REJECT)
        rows.append((w, state, str(verdict)))
    if args.format == "json":
        out.json([{"word": w, "state": s, "verdict": v} for w, s, v in rows])
    else:
        out.rows(("word", "state", "verdict"), rows)
    return EXIT_OK


def _probs(m, w):
    if isinstance(m, ca.Pfa):
        return ca.pfa_accept_prob(m, w), None
    if isinstance(m, qa.PvMo1Qfa):
        return qa.pvmo1qfa_probs(m, w)
    if isinstance(m, qa.Mo1Qfa):
        return qa.mo1qfa_accept_prob(m, w), None
    if isinstance(m, qa.Qcfa1):
        return qa.qcfa_exact_probs(m, w)
    if isinstance(m, ca.PvDfa):
        v = m.classify(w)
        return Fraction(int(v is ca.Verdict.ACCEPT)), Fraction(int(v is ca.Verdict.REJECT))
    return Fraction(int(m.accepts(w))), None


def cmd_prob(args, out: Output) -> int:
    m = _machine(args.machine)
    rows = [(w, *_probs(m, w)) for w in _words(args)]
    if args.format == "json":
        out.json([{"word": w, "accept": a, "reject": r} for w, a, r in rows])
    elif args.format == "csv":
        out.rows(("word", "accept", "reject"), rows)
    else:
        for w, a, r in rows:
            line = f"{w or '(empty)'}: accept {fmt_number(a)}"
            out.text(line if r is None else f"{line}, reject {fmt_number(r)}")
    return EXIT_OK


def cmd_sample(args, out: Output) -> int:
    m = _machine(args.machine)
    if not isinstance(m, qa.Qcfa1):
        raise UsageError("sample needs a qcfa1 machine")
    rows = []
    for w in _words(args):
        verdicts = qa.qcfa_sample_many(m, w, args.samples, args.seed)
        acc = sum(v is ca.Verdict.ACCEPT for v in verdicts)
        exact_acc, _ = qa.qcfa_exact_probs(m, w)
        rows.append((w, args.samples, acc, args.samples - acc, acc / args.samples, exact_acc))
    header = ("word", "samples", "accepted", "rejected", "accept_rate", "exact_accept")
    if args.format == "json":
        out.json([dict(zip(header, r)) for r in rows])
    else:
        out.rows(header, rows)
    return EXIT_OK


def cmd_family(args, out: Output) -> int:
    name = args.name or args.family
    if not name:
        raise UsageError("--name is required")
    problem = pp.make_family(name, _params(args))
    if args.classify is not None:
        words = [pp.expand_word(args.classify)]
    elif args.word is not None or args.word_file:
        words = _words(args)
    else:
        words = None
    if words is not None:
        verdicts = [(w, problem.classify_word(w).value) for w in words]
        if args.format == "json":
            out.json([{"word": w, "membership": v} for w, v in verdicts])
        elif args.format == "csv":
            out.rows(("word", "membership"), verdicts)
        else:
            for _, v in verdicts:
                out.text(v)
        return EXIT_OK
    if isinstance(problem, pp.RegularProblem):
        out.json(jsonio.problem_to_json(problem))
    else:
        max_len = args.max_len if args.max_len is not None else 8
        rows = [(w, problem.classify_word(w).value) for w in problem.promise_words(max_len)]
        if args.format == "json":
            out.json({"family": name, "params": _params(args), "bound": max_len,
                      "words": [{"word": w, "membership": v} for w, v in rows]})
        else:
            out.rows(("word", "membership"), rows)
    return EXIT_OK


CONSTRUCTORS = {
    "Ml": lambda a: qa.build_Ml(_need(a, "l")),
    "Ap": lambda a: qa.build_Ap(_need(a, "p")),
    "Ap_eps": lambda a: qa.build_Ap_eps(_need(a, "p"), _need(a, "eps")),
    "polyeq": lambda a: qa.build_polyeq_qcfa(a.eps if a.eps is not None else 1 / 3),
    "theorem10": lambda a: cx.theorem10_pvdfa(_need(a, "N"), _need(a, "l")),
    "appendix": lambda a: cx.build_appendix_pvdfa(_need(a, "p"), _need(a, "q")),
    "theorem20": lambda a: cx.build_theorem20_dfa(_need(a, "p")),
}


def _need(args, key):
    v = getattr(args, key)
    if v is None:
        raise UsageError(f"--{key} is required for this construction")
    return v


def cmd_construct(args, out: Output) -> int:
    name = args.name
    if name == "recognizer":
        problem = _load_problem(args)
        if not isinstance(problem, pp.RegularProblem):
            raise UsageError("recognizer needs a regular problem")
        machine = ca.recognizer_from_components(problem.dfa_yes, problem.dfa_no)
    elif name in CONSTRUCTORS:
        machine = CONSTRUCTORS[name](args)
    else:
        raise UsageError(f"unknown construction {name!r}; known: {sorted(CONSTRUCTORS) + ['recognizer']}")
    out.json(jsonio.machine_to_json(machine))
    return EXIT_OK


def cmd_minimize(args, out: Output) -> int:
    m = _machine(args.machine)
    if isinstance(m, ca.PvDfa):
        result = ca.minimize_pvdfa(m)
    elif isinstance(m, ca.Dfa):
        result = ca.minimize_dfa(m)
    else:
        raise UsageError("minimize needs a dfa or pvdfa")
    out.json(jsonio.machine_to_json(result))
    return EXIT_OK


def cmd_compare(args, out: Output) -> int:
    if not (args.a and args.b):
        raise UsageError("compare needs --a FILE and --b FILE")
    a, b = jsonio.load_machine(args.a), jsonio.load_machine(args.b)
    if not (isinstance(a, ca.Dfa) and isinstance(b, ca.Dfa)):
        raise UsageError("compare needs two dfa/pvdfa machines")
    res = dp.pvdfa_compare(a, b)
    if args.format == "table":
        out.text(res.relation.value)
        for key in ("witness_yes", "witness_no"):
            w = getattr(res, key)
            if w is not None:
                out.text(f"{key}: {w!r}")
    elif args.format == "csv":
        d = res.to_dict()
        out.rows(tuple(d), [tuple(d.values())])
    else:
        out.json(res.to_dict())
    return EXIT_OK


def cmd_complexity(args, out: Output) -> int:
    problem = _load_problem(args)
    report = cx.verify_bounds(problem, ss_max_states=args.max_states)
    row = (args.family or problem.name, json.dumps(_params(args), sort_keys=True), report.s_yes,
           report.s_no, report.sr, report.ss, report.bounds_ok)
    if args.format == "json":
        d = report.to_dict()
        d["witnesses"] = {k: jsonio.machine_to_json(v) for k, v in report.witnesses.items()}
        out.json(d)
    elif args.format == "csv":
        out.rows(cx.CSV_COLUMNS, [row])
    else:
        out.rows(("quantity", "value"), list(zip(cx.CSV_COLUMNS[2:], row[2:])))
        out.rows(("bound", "lhs", "rhs", "holds", "tight"),
                 [(b.name, b.lhs, b.rhs, b.holds, b.tight) for b in report.bound_checks])
        for note in report.notes:
            out.text(f"note: {note}")
    if args.witness_out and "sr" in report.witnesses:
        jsonio.save(jsonio.machine_to_json(report.witnesses["sr"]), args.witness_out)
    return EXIT_OK if report.bounds_ok else EXIT_CHECK


def cmd_verify(args, out: Output) -> int:
    params = _params(args)
    for key in ("family", "max_len", "seed", "k"):
        if getattr(args, key, None) is not None:
            params[key] = getattr(args, key)
    report = verify_theorem(args.theorem, params)
    if args.format == "json":
        out.json(report.to_dict())
    else:
        out.rows(("status", "check", "lhs", "rhs", "tol", "detail"),
                 [("PASS" if c.holds else "FAIL", c.name, c.lhs, c.rhs, c.tol, c.detail) for c in report.checks])
        if args.format == "table":
            out.text(f"{args.theorem}: {'PASS' if report.passed else 'FAIL'}")
    return EXIT_OK if report.passed else EXIT_CHECK


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "table"), default="table")
    common.add_argument("--out", metavar="FILE")
    common.add_argument("--tolerance", type=float, help="override the 1e-9 exactness tolerance")

    params = argparse.ArgumentParser(add_help=False)
    for key in ("N", "l", "p", "q", "r1", "r2"):
        params.add_argument(f"--{key}", type=int)
    params.add_argument("--eps", type=_number)

    words = argparse.ArgumentParser(add_help=False)
    words.add_argument("--word")
    words.add_argument("--word-file", metavar="FILE")

    parser = argparse.ArgumentParser(prog="promise-fa", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", parents=[common, words], help="final state and verdict of a dfa/pvdfa")
    p.add_argument("--machine", metavar="FILE")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("prob", parents=[common, words], help="acceptance (and rejection) probabilities")
    p.add_argument("--machine", metavar="FILE")
    p.set_defaults(func=cmd_prob)

    p = sub.add_parser("sample", parents=[common, words], help="Monte Carlo runs of a qcfa1")
    p.add_argument("--machine", metavar="FILE")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=1000)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("family", parents=[common, params, words], help="build a family and classify words")
    p.add_argument("--name", choices=sorted(pp.FAMILIES))
    p.add_argument("--family", choices=sorted(pp.FAMILIES), help="alias of --name")
    p.add_argument("--classify", metavar="WORD")
    p.add_argument("--max-len", type=int)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("construct", parents=[common, params], help="emit a named machine as JSON")
    p.add_argument("--name", required=True, help=f"one of {sorted(CONSTRUCTORS) + ['recognizer']}")
    p.add_argument("--family", choices=sorted(pp.FAMILIES))
    p.add_argument("--problem", metavar="FILE")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("minimize", parents=[common], help="minimize a dfa/pvdfa")
    p.add_argument("--machine", metavar="FILE")
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("compare", parents=[common], help="subproblem order of two pvDFAs")
    p.add_argument("--a", metavar="FILE")
    p.add_argument("--b", metavar="FILE")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("complexity", parents=[common, params], help="s_yes, s_no, sr, ss and the bounds")
    p.add_argument("--problem", metavar="FILE")
    p.add_argument("--family", choices=sorted(pp.FAMILIES))
    p.add_argument("--max-states", type=int, help="ss search bound (default min(s_yes, s_no))")
    p.add_argument("--witness-out", metavar="FILE")
    p.set_defaults(func=cmd_complexity)

    p = sub.add_parser("verify-theorem", parents=[common, params], help="run a verification suite")
    p.add_argument("theorem", choices=list(SUITES))
    p.add_argument("--family", choices=sorted(pp.FAMILIES))
    p.add_argument("--max-len", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--k", type=int, help="state bound for ss searches")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = Output(args.format, args.out)
    if args.tolerance is not None:
        from . import theorems

        theorems.EXACT_TOL = args.tolerance
    try:
        code = args.func(args, out)
    except (UsageError, SchemaError, AutomatonError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
