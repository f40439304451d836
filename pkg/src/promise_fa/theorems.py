"""Runnable verification suites, one per constructive result.

Each suite returns a :class:`TheoremReport` made of :class:`CheckLine` rows
(name, lhs, rhs, tolerance, holds).  Word-range properties are summarized as
a violation count against 0, with the first offending word in ``detail``.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import classical as ca
from . import complexity as cx
from . import decision as dp
from . import generators as gen
from . import problems as pp
from . import quantum as qa
from .classical import Verdict
from .errors import UnionUndefined, UnknownTheoremId
from .problems import Membership

EXACT_TOL = 1e-9
SEPARATION_TOL = 1e-6

_EXPECTED_VERDICT = {Membership.YES: Verdict.ACCEPT, Membership.NO: Verdict.REJECT, Membership.OUTSIDE: Verdict.NEUTRAL}


@dataclass
class CheckLine:
    name: str
    lhs: object
    rhs: object
    tol: float | None
    holds: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in ("name", "lhs", "rhs", "tol", "holds", "detail")}


@dataclass
class TheoremReport:
    theorem: str
    params: dict
    checks: list[CheckLine] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.holds for c in self.checks)

    @property
    def failures(self) -> list[CheckLine]:
        return [c for c in self.checks if not c.holds]

    def eq(self, name, lhs, rhs, detail=""):
        self.checks.append(CheckLine(name, lhs, rhs, None, lhs == rhs, detail))

    def le(self, name, lhs, rhs, tol=None, detail=""):
        slack = tol or 0.0
        self.checks.append(CheckLine(name, lhs, rhs, tol, lhs <= rhs + slack, detail))

    def near(self, name, lhs, rhs, tol, detail=""):
        self.checks.append(CheckLine(name, lhs, rhs, tol, abs(lhs - rhs) <= tol, detail))

    def ok(self, name, holds: bool, detail=""):
        self.checks.append(CheckLine(name, bool(holds), True, None, bool(holds), detail))

    def violations(self, name, bad: list, tol=None):
        detail = f"first: {bad[0]!r}" if bad else ""
        self.checks.append(CheckLine(name, len(bad), 0, tol, not bad, detail))

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "params": self.params,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }


def _problem(params, default_family, **defaults):
    family = params.get("family") or default_family
    args = dict(defaults) if family == default_family else {}
    args.update({k: v for k, v in params.items() if k != "family" and v is not None})
    names = pp.FAMILIES[family][1] if family in pp.FAMILIES else ()
    return pp.make_family(family, {k: args.get(k) for k in names})


def _recognition_errors(machine, problem, max_len) -> list[str]:
    return [
        w for w in pp.all_words(problem.alphabet, max_len)
        if machine.classify(w) is not _EXPECTED_VERDICT[problem.classify_word(w)]
    ]


# -- classical suites --------------------------------------------------------------


def _t3(params) -> TheoremReport:
    """Recognizer from component DFAs and back."""
    r = TheoremReport("T3", params)
    problem = _problem(params, "ANl", N=5, l=2)
    max_len = params.get("max_len") or 20
    rec = ca.recognizer_from_components(problem.dfa_yes, problem.dfa_no)
    r.violations(f"recognizer verdicts match membership on words <= {max_len}", _recognition_errors(rec, problem, max_len))
    yes, no = ca.component_dfas(rec)
    r.ok("L(yes component) = yes language", ca.dfa_equivalent(yes, problem.dfa_yes).holds)
    r.ok("L(no component) = no language", ca.dfa_equivalent(no, problem.dfa_no).holds)
    r.le("recognizer size <= |S1||S2| - |Sa1||Sa2|", rec.num_states,
         problem.dfa_yes.num_states * problem.dfa_no.num_states - len(problem.dfa_yes.accepting) * len(problem.dfa_no.accepting))
    back = ca.minimize_pvdfa(ca.recognizer_from_components(yes, no))
    r.ok("round trip through components preserves P(A)", dp.pvdfa_equivalent(back, rec).holds)
    return r


def _t5(params) -> TheoremReport:
    r = TheoremReport("T5", params)
    problem = _problem(params, "ANl", N=5, l=2)
    max_len = params.get("max_len") or 20
    rec = ca.recognizer_from_components(problem.dfa_yes, problem.dfa_no)
    comp = ca.complement(rec)
    r.violations("complement recognizes the complement problem",
                 _recognition_errors(comp, pp.complement_pp(problem), max_len))
    r.ok("complement is an involution", ca.complement(comp) == rec)
    return r


def _pair(params, default_a, default_b):
    a = params.get("a") or default_a
    b = params.get("b") or default_b
    return pp.make_family(a[0], a[1]), pp.make_family(b[0], b[1])


def _binary_product_check(r, op_machine, op_problem, pa, pb, max_len):
    ma = ca.recognizer_from_components(pa.dfa_yes, pa.dfa_no)
    mb = ca.recognizer_from_components(pb.dfa_yes, pb.dfa_no)
    prod = op_machine(ma, mb)
    target = op_problem(pa, pb)
    bad = [
        w for w in pp.all_words(target.alphabet, max_len)
        if prod.classify(w) is not _EXPECTED_VERDICT[target.classify_word(w)]
    ]
    r.violations(f"product verdicts match set-level verdicts on words <= {max_len}", bad)
    return ma, mb, prod


def _t6(params) -> TheoremReport:
    r = TheoremReport("T6", params)
    pa, pb = _pair(params, ("ANl", {"N": 2, "l": 1}), ("ANl", {"N": 3, "l": 1}))
    max_len = params.get("max_len") or 12
    ma, _, _ = _binary_product_check(r, ca.intersect_recognizers, pp.intersect_pp, pa, pb, max_len)
    r.ok("intersection with itself is idempotent", dp.pvdfa_equivalent(ca.intersect_recognizers(ma, ma), ma).holds)
    return r


def _t8(params) -> TheoremReport:
    r = TheoremReport("T8", params)
    pa, pb = _pair(params, ("ANr1r2", {"N": 6, "r1": 1, "r2": 4}), ("ANr1r2", {"N": 6, "r1": 2, "r2": 5}))
    max_len = params.get("max_len") or 12
    _binary_product_check(r, ca.union_recognizers, pp.union_pp, pa, pb, max_len)
    ma = ca.recognizer_from_components(pa.dfa_yes, pa.dfa_no)
    try:
        ca.union_recognizers(ma, ca.complement(ma))
        r.ok("union with the complement is undefined", False, "no error raised")
    except UnionUndefined as exc:
        w = exc.witness
        in_yes = ma.classify(w) in (Verdict.ACCEPT, Verdict.REJECT)
        r.ok("union with the complement is undefined", in_yes, f"witness {w!r}")
    return r


def _pumping_errors(machine, problem, words, same_component: bool, max_t: int = 5) -> list:
    bad = []
    n = machine.num_states
    for w in words:
        m = problem.classify_word(w)
        if m is Membership.OUTSIDE or len(w) < n:
            continue
        x, y, z = ca.pump_decompose(machine, w)
        if x + y + z != w or len(x + y) > n or not y or machine.run(x) != machine.run(x + y):
            bad.append((w, "decomposition"))
            continue
        opposite = Membership.NO if m is Membership.YES else Membership.YES
        for t in range(max_t + 1):
            pumped = x + y * t + z
            got = problem.classify_word(pumped)
            if (same_component and got is not m) or (not same_component and got is opposite):
                bad.append((w, t))
                break
    return bad


def _pl1(params) -> TheoremReport:
    r = TheoremReport("PL1", params)
    problem = _problem(params, "ANl", N=5, l=2)
    max_len = params.get("max_len") or 25
    _, machine = cx.compute_sr(problem)
    words = list(problem.promise_words(max_len))
    r.violations("pumped words stay in the same component (t <= 5)", _pumping_errors(machine, problem, words, True))
    return r


def _pl2(params) -> TheoremReport:
    r = TheoremReport("PL2", params)
    problem = _problem(params, "ANl", N=4, l=1)
    max_len = params.get("max_len") or 16
    found = cx.compute_ss_bruteforce(problem, params.get("k") or 4)
    if not isinstance(found, cx.SsFound):
        r.ok("a solving pvDFA exists", False)
        return r
    machine = found.witness
    r.ok("witness solves the problem", cx.solves_exactly(machine, problem).holds)
    words = list(problem.promise_words(max_len))
    r.violations("pumped words never land in the opposite component (t <= 5)",
                 _pumping_errors(machine, problem, words, False))
    c = cx.compute_ss_bruteforce(pp.make_C(), 3, verify_len=12)
    r.ok("no pvDFA with <= 3 states solves C on words <= 12", isinstance(c, cx.NotFoundUpTo))
    return r


def _t9(params) -> TheoremReport:
    r = TheoremReport("T9", params)
    problem = _problem(params, "ANl", N=5, l=2)
    rep = cx.verify_bounds(problem, ss_max_states=0)  # ss is the business of T12
    r.params = {**params, "s_yes": rep.s_yes, "s_no": rep.s_no, "sr": rep.sr}
    for b in rep.bound_checks:
        if b.name.startswith("sr"):
            r.le(b.name, b.lhs, b.rhs)
    if not any(b.name.startswith("sr") for b in rep.bound_checks):
        r.ok("both components nonempty", False, "; ".join(rep.notes))
    return r


def _t10(params) -> TheoremReport:
    r = TheoremReport("T10", params)
    N, l = params.get("N") or 5, params.get("l") or 2
    problem = pp.make_ANl(N, l)
    sr, witness = cx.compute_sr(problem)
    r.eq("sr(A^{N,l})", sr, N)
    r.eq("max(s_yes, s_no)", max(cx.dfa_size(problem.dfa_yes), cx.dfa_size(problem.dfa_no)), N)
    r.ok("explicit N-cycle machine recognizes the problem",
         dp.pvdfa_equivalent(cx.theorem10_pvdfa(N, l), witness).holds)
    return r


def _t11(params) -> TheoremReport:
    r = TheoremReport("T11", params)
    p, q = params.get("p") or 4, params.get("q") or 6
    problem = pp.make_appendix(p, q)
    sr, witness = cx.compute_sr(problem)
    r.eq("sr = s_yes * s_no / 2", sr, cx.dfa_size(problem.dfa_yes) * cx.dfa_size(problem.dfa_no) // 2)
    machine = cx.build_appendix_pvdfa(p, q)
    r.eq("appendix machine states", machine.num_states, p * q // 2)
    r.eq("minimization keeps every state", ca.minimize_pvdfa(machine).num_states, machine.num_states)
    r.ok("appendix machine recognizes the problem", dp.pvdfa_equivalent(machine, witness).holds)
    return r


def _t12(params) -> TheoremReport:
    r = TheoremReport("T12", params)
    problem = _problem(params, "ANl", N=5, l=2)
    s_yes, s_no = cx.dfa_size(problem.dfa_yes), cx.dfa_size(problem.dfa_no)
    found = cx.compute_ss_bruteforce(problem, params.get("k") or min(s_yes, s_no))
    if not isinstance(found, cx.SsFound):
        r.ok("solving pvDFA with <= min(s_yes, s_no) states", False)
        return r
    r.le("ss <= min(s_yes, s_no)", found.size, min(s_yes, s_no))
    r.ok("witness solves the problem", cx.solves_exactly(found.witness, problem).holds)
    if params.get("expect_ss") is not None:
        r.eq("ss", found.size, params["expect_ss"])
    return r


def _t17(params) -> TheoremReport:
    """Equivalence via bilinear machines on a seeded pool of random pvDFAs."""
    r = TheoremReport("T17", params)
    rng = random.Random(params.get("seed") or 0)
    pairs = params.get("pairs") or 10
    max_len = params.get("max_len") or 12
    eq_fail, neq_fail = [], []
    made = 0
    while made < pairs:
        m = gen.random_pvdfa(rng, rng.randint(2, 5))
        padded = gen.permute_states(gen.pad_with_duplicate(m), rng)
        if not dp.pvdfa_equivalent(padded, ca.minimize_pvdfa(padded)):
            eq_fail.append(made)
        # perturb: relabel one reachable state
        s = rng.choice(m.reachable())
        labels = [m.verdict_of(q) for q in range(m.num_states)]
        labels[s] = rng.choice([v for v in Verdict if v is not labels[s]])
        other = ca.PvDfa(m.alphabet, m.delta, m.initial,
                         {q for q, v in enumerate(labels) if v is Verdict.ACCEPT},
                         {q for q, v in enumerate(labels) if v is Verdict.REJECT})
        res = dp.pvdfa_equivalent(m, other)
        brute = next((w for w in pp.all_words(m.alphabet, max_len) if m.classify(w) != other.classify(w)), None)
        if res.holds or res.witness != brute:
            neq_fail.append((made, res.witness, brute))
        made += 1
    r.violations("machine and its minimization are equivalent", eq_fail)
    r.violations("perturbed pairs differ with a shortest witness", neq_fail)
    return r


# -- quantum suites ----------------------------------------------------------------


def _t14(params) -> TheoremReport:
    r = TheoremReport("T14", params)
    l = params.get("l") or 1
    max_len = params.get("max_len") or 14
    m = qa.build_Ml(l)
    u_a, u_b = m.unitaries["a"], m.unitaries["b"]
    eye = np.eye(3)
    r.le("||U_a U_b - I||", float(np.linalg.norm(u_a @ u_b - eye)), 0.0, 1e-12)
    r.le("||U_$ U_cent - I||", float(np.linalg.norm(m.unitaries[qa.RIGHT_END] @ m.unitaries[qa.LEFT_END] - eye)), 0.0, 1e-12)
    acc_bad, rej_bad, sep_bad = [], [], []
    for w in pp.all_words(("a", "b"), max_len):
        na, nb = w.count("a"), w.count("b")
        p_acc, p_rej = qa.pvmo1qfa_probs(m, w)
        acc_one, rej_one = p_acc >= 1 - EXACT_TOL, p_rej >= 1 - EXACT_TOL
        if acc_one != (na == nb):
            acc_bad.append(w)
        if rej_one != (nb == na + l):
            rej_bad.append(w)
        if na != nb and nb != na + l and max(p_acc, p_rej) > 1 - SEPARATION_TOL:
            sep_bad.append(w)
    r.violations("p_accept = 1 iff #a = #b", acc_bad, EXACT_TOL)
    r.violations(f"p_reject = 1 iff #b = #a + {l}", rej_bad, EXACT_TOL)
    r.violations("other words: max(p_accept, p_reject) <= 1 - 1e-6", sep_bad, SEPARATION_TOL)
    return r


def polyeq_closed_form_accept(n: int, m: int, t: int) -> float:
    """(cos^2((n - m) sqrt2 pi))^t: every round survives independently."""
    return math.cos((n - m) * qa.SQRT2_PI) ** (2 * t)


def _t18(params) -> TheoremReport:
    r = TheoremReport("T18", params)
    eps = params.get("eps") or 1 / 3
    top = params.get("max_nm") or 4
    m = qa.build_polyeq_qcfa(eps)
    yes_bad, no_bad, closed_bad = [], [], []
    for n in range(top + 1):
        for k in range(top + 1):
            t = max(qa.polyeq_T(n, k, eps), 1)
            word = ("a" * n + "b" * k + "#") * t
            p_acc, p_rej = qa.qcfa_exact_probs(m, word)
            if abs(p_acc - polyeq_closed_form_accept(n, k, t)) > EXACT_TOL:
                closed_bad.append((n, k, p_acc))
            if n == k and abs(p_acc - 1) > EXACT_TOL:
                yes_bad.append((n, k, p_acc))
            if n != k and p_rej < 1 - eps:
                no_bad.append((n, k, p_rej))
    r.violations("yes-instances accepted with probability 1", yes_bad, EXACT_TOL)
    r.violations(f"no-instances rejected with probability >= {1 - eps:.6g}", no_bad)
    r.violations("branch enumeration equals closed form", closed_bad, EXACT_TOL)
    for d in range(1, 11):
        lhs = math.sin(d * qa.SQRT2_PI) ** 2
        r.checks.append(CheckLine(f"sin^2({d} sqrt2 pi) > 1/(2*{d}^2+1)", lhs, 1 / (2 * d * d + 1), None, lhs > 1 / (2 * d * d + 1)))
    return r


def _t19(params) -> TheoremReport:
    r = TheoremReport("T19-construct", params)
    ps = [params["p"]] if params.get("p") else [6, 7, 11]
    for p in ps:
        m = qa.build_Ap(p)
        problem = pp.make_Ap(p)
        formula_bad, error_bad = [], []
        for k in range(4 * p + 1):
            w = "a" * k
            acc = qa.mo1qfa_accept_prob(m, w)
            if abs(acc - math.cos(k * math.pi / p) ** 2) > EXACT_TOL:
                formula_bad.append(k)
            member = problem.classify_word(w)
            if (member is Membership.YES and 1 - acc > 1 / 3) or (member is Membership.NO and acc > 1 / 3):
                error_bad.append(k)
        r.violations(f"p={p}: accept(a^k) = cos^2(k pi/p) for k <= {4 * p}", formula_bad, EXACT_TOL)
        r.violations(f"p={p}: error <= 1/3 on promise words", error_bad)
        half = math.ceil(p / 2)
        r.le(f"p={p}: accept(a^{half}) <= 1/3", qa.mo1qfa_accept_prob(m, "a" * half), 1 / 3)
    return r


def _t20(params) -> TheoremReport:
    r = TheoremReport("T20-construct", params)
    p = params.get("p") or 7
    dfa = cx.build_theorem20_dfa(p)
    problem = pp.make_Ap(p)
    r.eq("DFA states", dfa.num_states, p)
    expected = {l for l in range(p) if math.cos(l * math.pi / p) ** 2 >= 2 / 3}
    r.eq("accepting residues", sorted(dfa.accepting), sorted(expected))
    r.ok(f"DFA solves A({p}) on promise words <= {4 * p}", cx.solves_up_to(ca.as_pvdfa(dfa), problem, 4 * p).holds)
    r1 = min(x for x in expected if x > 0)
    r2 = min(problem.dfa_no.accepting)
    sub = pp.make_ANr1r2(p, r1, r2)
    r.ok(f"A^{{{p},{r1},{r2}}} <= A({p})", pp.is_subproblem(sub, problem).holds)
    return r


SUITES: dict[str, Callable[[dict], TheoremReport]] = {
    "T3": _t3,
    "T5": _t5,
    "T6": _t6,
    "T8": _t8,
    "PL1": _pl1,
    "PL2": _pl2,
    "T9": _t9,
    "T10": _t10,
    "T11": _t11,
    "T12": _t12,
    "T14": _t14,
    "T17": _t17,
    "T18": _t18,
    "T19-construct": _t19,
    "T20-construct": _t20,
}


def verify_theorem(theorem_id: str, params: dict | None = None) -> TheoremReport:
    """Run the suite for ``theorem_id``; builder errors propagate."""
    if theorem_id not in SUITES:
        raise UnknownTheoremId(theorem_id)
    return SUITES[theorem_id](dict(params or {}))


__all__ = ["CheckLine", "SUITES", "TheoremReport", "polyeq_closed_form_accept", "verify_theorem"]
