"""State complexity: sr (recognizing) and ss (solving) sizes, bound checks,
and the explicit machines used to show the bounds are met."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator

from . import classical as ca
from .classical import Check, Dfa, PvDfa
from .errors import InvalidParameter, NotRegularFlavor, SearchBudgetExceeded
from .problems import Membership, PredicateProblem, PromiseProblem, RegularProblem, ap_residues

DEFAULT_BUDGET = 2_000_000


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def _is_empty(dfa: Dfa) -> bool:
    return ca.shortest_accepted(dfa) is None


def dfa_size(dfa: Dfa) -> int:
    """s(L): states of the minimal complete DFA for L(dfa)."""
    return ca.minimize_dfa(dfa).num_states


def compute_sr(problem: PromiseProblem) -> tuple[int, PvDfa]:
    """Size of the minimal pvDFA recognizing ``problem`` and that machine."""
    if not isinstance(problem, RegularProblem):
        raise NotRegularFlavor(f"{problem.name} is not a regular promise problem")
    m = ca.minimize_pvdfa(ca.recognizer_from_components(problem.dfa_yes, problem.dfa_no))
    return m.num_states, m


def solves_up_to(machine: PvDfa, problem: PromiseProblem, max_len: int) -> Check:
    """Every promise word of length <= max_len lands in the right state set."""
    machine = ca.as_pvdfa(machine)
    for w in problem.promise_words(max_len):
        m = problem.classify_word(w)
        if m is Membership.OUTSIDE:
            continue
        if any(ch not in machine._index for ch in w):
            return Check(False, w, max_len)
        v = machine.classify(w)
        if (m is Membership.YES and v is not ca.Verdict.ACCEPT) or (m is Membership.NO and v is not ca.Verdict.REJECT):
            return Check(False, w, max_len)
    return Check(True, None, max_len)


def solves_exactly(machine: PvDfa, problem: RegularProblem) -> Check:
    """L(yes) ⊆ P_yes(machine) and L(no) ⊆ P_no(machine), decided on DFAs."""
    my, mn = ca.component_dfas(ca.as_pvdfa(machine))
    r = ca.dfa_language_included(problem.dfa_yes, my)
    return r if not r else ca.dfa_language_included(problem.dfa_no, mn)


# -- brute-force search for ss -----------------------------------------------------


def canonical_tables(num_states: int, num_symbols: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All initially connected transition tables up to isomorphism.

    States are numbered in order of first appearance when the table is read
    row by row, so each isomorphism class is produced exactly once, in
    lexicographic order of the flattened table.
    """
    total = num_states * num_symbols
    flat = [0] * total

    def fill(pos: int, discovered: int):
        if pos == total:
            if discovered == num_states:
                yield tuple(tuple(flat[i * num_symbols:(i + 1) * num_symbols]) for i in range(num_states))
            return
        row = pos // num_symbols
        if row >= discovered:
            return
        if num_states - discovered > total - pos:
            return
        for t in range(min(discovered, num_states - 1) + 1):
            flat[pos] = t
            yield from fill(pos + 1, discovered + (t == discovered))

    yield from fill(0, 1)


@dataclass(frozen=True)
class SsFound:
    size: int
    witness: PvDfa
    verify_len: int | None  # None: correctness decided exactly on the component DFAs
    candidates: int

    @property
    def exact(self) -> bool:
        return self.verify_len is None


@dataclass(frozen=True)
class NotFoundUpTo:
    k: int
    verify_len: int | None
    candidates: int


def _regular_labels(table, alphabet, problem: RegularProblem):
    """State sets hit by yes- and no-words, via the product candidate × yes × no."""
    yes, no = problem.dfa_yes, problem.dfa_no
    cols = [(k, yes.symbol_index(s), no.symbol_index(s)) for k, s in enumerate(alphabet)]
    start = (0, yes.initial, no.initial)
    seen = {start}
    stack = [start]
    hit_yes, hit_no = set(), set()
    while stack:
        c, y, n = stack.pop()
        if y in yes.accepting:
            hit_yes.add(c)
        if n in no.accepting:
            hit_no.add(c)
        for k, ky, kn in cols:
            nxt = (table[c][k], yes.delta[y][ky], no.delta[n][kn])
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return hit_yes, hit_no


def compute_ss_bruteforce(
    problem: PromiseProblem,
    max_states: int,
    verify_len: int | None = None,
    budget: int = DEFAULT_BUDGET,
    exact: bool | None = None,
) -> SsFound | NotFoundUpTo:
    """Smallest m <= max_states such that some m-state pvDFA solves ``problem``.

    For a regular problem the candidate check is exact by default (product
    reachability against the component DFAs), so the answer is the true ss
    when found and a proof of ss > max_states otherwise.  Predicate problems
    (or ``exact=False``) are checked on promise words of length <= verify_len,
    which makes a negative answer conditional on that bound.
    """
    if exact is None:
        exact = isinstance(problem, RegularProblem)
    if exact and not isinstance(problem, RegularProblem):
        raise NotRegularFlavor("exact ss search needs a regular promise problem")
    if not exact and verify_len is None:
        raise InvalidParameter("bounded ss search needs verify_len")
    alphabet = tuple(sorted(problem.alphabet))
    if exact:
        problem = problem.lifted(alphabet) if set(problem.dfa_yes.alphabet) != set(alphabet) else problem
    else:
        labelled = [(w, problem.classify_word(w)) for w in problem.promise_words(verify_len)]
        words = [
            ([alphabet.index(ch) for ch in w], m is Membership.YES)
            for w, m in labelled
            if m is not Membership.OUTSIDE
        ]
    candidates = 0
    for m in range(1, max_states + 1):
        for table in canonical_tables(m, len(alphabet)):
            candidates += 1
            if candidates > budget:
                raise SearchBudgetExceeded(f"more than {budget} candidate tables up to {m} states")
            if exact:
                hit_yes, hit_no = _regular_labels(table, alphabet, problem)
            else:
                hit_yes, hit_no = set(), set()
                for letters, is_yes in words:
                    s = 0
                    for k in letters:
                        s = table[s][k]
                    (hit_yes if is_yes else hit_no).add(s)
                    if s in hit_yes and s in hit_no:
                        break
            if hit_yes.isdisjoint(hit_no):
                witness = PvDfa(alphabet, table, 0, hit_yes, hit_no)
                return SsFound(m, witness, None if exact else verify_len, candidates)
    return NotFoundUpTo(max_states, None if exact else verify_len, candidates)


# -- explicit machines -------------------------------------------------------------


def theorem10_pvdfa(N: int, l: int) -> PvDfa:
    """N-cycle with S_a = {s_0}, S_r = {s_l}."""
    if not 0 < l < N:
        raise InvalidParameter(f"need 0 < l < N, got l={l}, N={N}")
    return ca.cycle_pvdfa(N, {0}, {l})


def build_appendix_pvdfa(p: int, q: int) -> PvDfa:
    """Pairs <k mod p, k mod q> reachable from <0, 0>; S_a: k ≡ 0 (p), S_r: k ≡ 1 (q)."""
    if not (isinstance(p, int) and isinstance(q, int) and p > 2 and q > 2):
        raise InvalidParameter(f"need integers p, q > 2, got {p!r}, {q!r}")
    if math.gcd(p, q) != 2:
        raise InvalidParameter(f"need gcd(p, q) = 2, got gcd({p}, {q}) = {math.gcd(p, q)}")
    pairs = [(0, 0)]
    index = {(0, 0): 0}
    while True:
        i, j = pairs[-1]
        nxt = ((i + 1) % p, (j + 1) % q)
        if nxt in index:
            break
        index[nxt] = len(pairs)
        pairs.append(nxt)
    n = len(pairs)
    delta = [(index[((i + 1) % p, (j + 1) % q)],) for i, j in pairs]
    acc = {k for k, (i, _) in enumerate(pairs) if i == 0}
    rej = {k for k, (_, j) in enumerate(pairs) if j == 1 % q}
    assert n == p * q // 2
    return PvDfa(("a",), delta, 0, acc, rej)


def build_theorem20_dfa(p: int) -> Dfa:
    """p-cycle DFA accepting residues l with cos²(lπ/p) >= 2/3."""
    if not (isinstance(p, int) and p > 6 and is_prime(p)):
        raise InvalidParameter(f"p must be a prime > 6, got {p!r}")
    yes, _ = ap_residues(p, 2 / 3, 1 / 3)
    return ca.cycle_dfa(p, yes)


# -- reports -------------------------------------------------------------------------


@dataclass
class BoundCheck:
    name: str
    lhs: int
    rhs: int
    holds: bool
    tight: bool


@dataclass
class ComplexityReport:
    problem: str
    s_yes: int
    s_no: int
    sr: int
    ss: int | None
    ss_verify_len: int | None = None
    ss_exact: bool | None = None
    bound_checks: list[BoundCheck] = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def bounds_ok(self) -> bool:
        return all(b.holds for b in self.bound_checks)

    def to_dict(self) -> dict:
        return {
            "problem": self.problem,
            "s_yes": self.s_yes,
            "s_no": self.s_no,
            "sr": self.sr,
            "ss": self.ss,
            "ss_verify_len": self.ss_verify_len,
            "ss_exact": self.ss_exact,
            "bound_checks": [vars(b) for b in self.bound_checks],
            "bounds_ok": self.bounds_ok,
            "notes": list(self.notes),
        }


CSV_COLUMNS = ("family", "params", "s_yes", "s_no", "sr", "ss", "bounds_ok")


def verify_bounds(
    problem: RegularProblem,
    ss_max_states: int | None = None,
    ss_budget: int = DEFAULT_BUDGET,
) -> ComplexityReport:
    """Compute s_yes, s_no, sr, ss and check both bound chains.

    ``ss_max_states=0`` skips the ss search.
    """
    if not isinstance(problem, RegularProblem):
        raise NotRegularFlavor(f"{problem.name} is not a regular promise problem")
    s_yes, s_no = dfa_size(problem.dfa_yes), dfa_size(problem.dfa_no)
    sr, sr_machine = compute_sr(problem)
    report = ComplexityReport(problem.name, s_yes, s_no, sr, None, witnesses={"sr": sr_machine})
    both_nonempty = not _is_empty(problem.dfa_yes) and not _is_empty(problem.dfa_no)
    if both_nonempty:
        lo, hi = max(s_yes, s_no), s_yes * s_no - 1
        report.bound_checks.append(BoundCheck("sr_lower", lo, sr, lo <= sr, lo == sr))
        report.bound_checks.append(BoundCheck("sr_upper", sr, hi, sr <= hi, sr == hi))
    else:
        report.notes.append("a component is empty; sr bounds not asserted")
    k = min(s_yes, s_no) if ss_max_states is None else ss_max_states
    if k <= 0:
        report.notes.append("ss not searched")
        return report
    try:
        found = compute_ss_bruteforce(problem, k, budget=ss_budget)
    except SearchBudgetExceeded as exc:
        report.notes.append(f"ss unknown: {exc}")
        return report
    report.ss_exact = True
    if isinstance(found, SsFound):
        report.ss = found.size
        report.witnesses["ss"] = found.witness
        cap = min(s_yes, s_no)
        report.bound_checks.append(BoundCheck("ss_upper", found.size, cap, found.size <= cap, found.size == cap))
    else:
        report.notes.append(f"no solving pvDFA with <= {k} states")
        report.bound_checks.append(BoundCheck("ss_upper", k + 1, min(s_yes, s_no), False, False))
    return report
