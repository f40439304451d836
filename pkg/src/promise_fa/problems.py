"""Promise problems and the concrete families used throughout the package.

Two flavors exist.  :class:`RegularProblem` keeps a DFA per component and
is decided exactly.  :class:`PredicateProblem` keeps membership oracles plus
an enumerator of candidate promise words; anything that needs to see all
promise words (disjointness, subproblem checks) is verified only up to the
problem's length ``bound``, which is always reported.
"""
from __future__ import annotations

import enum
import itertools
import math
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from . import classical as ca
from .classical import Check, Dfa
from .errors import (
    BeyondEnumerationBound,
    InvalidParameter,
    OverlappingComponents,
    UnionUndefined,
)

DEFAULT_BOUND = 16
# guard band for the cos² threshold comparisons of the A(p) families
THRESHOLD_GUARD = 1e-12


class Membership(enum.Enum):
    YES = "Yes"
    NO = "No"
    OUTSIDE = "OutsidePromise"

    def __str__(self):
        return self.value


def all_words(alphabet, max_len: int) -> Iterator[str]:
    """Every word of length <= max_len, shortest first, lexicographic within a length."""
    symbols = sorted(alphabet)
    for n in range(max_len + 1):
        for letters in itertools.product(symbols, repeat=n):
            yield "".join(letters)


class PromiseProblem:
    alphabet: tuple[str, ...]
    name: str

    def classify_word(self, word: str) -> Membership:
        raise NotImplementedError

    def promise_words(self, max_len: int) -> Iterator[str]:
        """Candidate words up to ``max_len``: a superset of the promise restricted to that length."""
        raise NotImplementedError

    def is_yes(self, word: str) -> bool:
        return self.classify_word(word) is Membership.YES

    def is_no(self, word: str) -> bool:
        return self.classify_word(word) is Membership.NO

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


def _foreign(word: str, alphabet) -> bool:
    return any(ch not in alphabet for ch in word)


@dataclass(repr=False)
class RegularProblem(PromiseProblem):
    dfa_yes: Dfa
    dfa_no: Dfa
    name: str = "regular"
    alphabet: tuple[str, ...] = field(init=False)

    def __post_init__(self):
        self.dfa_yes, self.dfa_no = ca.unify_alphabets(self.dfa_yes, self.dfa_no)
        self.alphabet = tuple(sorted(self.dfa_yes.alphabet))
        clash = ca.product_search(
            self.dfa_yes,
            self.dfa_no,
            lambda pq: pq[0] in self.dfa_yes.accepting and pq[1] in self.dfa_no.accepting,
        )
        if clash is not None:
            raise OverlappingComponents(f"{self.name}: components intersect", clash)

    def classify_word(self, word: str) -> Membership:
        if _foreign(word, self.dfa_yes._index):
            return Membership.OUTSIDE
        if self.dfa_yes.accepts(word):
            return Membership.YES
        if self.dfa_no.accepts(word):
            return Membership.NO
        return Membership.OUTSIDE

    def promise_words(self, max_len: int) -> Iterator[str]:
        return all_words(self.alphabet, max_len)

    def lifted(self, alphabet) -> "RegularProblem":
        return RegularProblem(ca.lift(self.dfa_yes, alphabet), ca.lift(self.dfa_no, alphabet), self.name)


@dataclass(repr=False)
class PredicateProblem(PromiseProblem):
    alphabet: tuple[str, ...]
    yes: Callable[[str], bool]
    no: Callable[[str], bool]
    name: str = "predicate"
    bound: int = DEFAULT_BOUND
    enumerator: Callable[[int], Iterable[str]] | None = None
    check_disjoint: bool = True

    def __post_init__(self):
        self.alphabet = tuple(sorted(self.alphabet))
        if self.check_disjoint:
            for w in self.promise_words(self.bound):
                if self.yes(w) and self.no(w):
                    raise OverlappingComponents(f"{self.name}: components intersect", w)

    def classify_word(self, word: str) -> Membership:
        if len(word) > self.bound:
            raise BeyondEnumerationBound(f"{self.name}: |word| = {len(word)} > bound {self.bound}")
        if _foreign(word, self.alphabet):
            return Membership.OUTSIDE
        if self.yes(word):
            return Membership.YES
        if self.no(word):
            return Membership.NO
        return Membership.OUTSIDE

    def promise_words(self, max_len: int) -> Iterator[str]:
        if self.enumerator is None:
            return all_words(self.alphabet, max_len)
        return iter(sorted(set(self.enumerator(max_len)), key=lambda w: (len(w), w)))


def as_predicate(p: PromiseProblem, bound: int | None = None) -> PredicateProblem:
    if isinstance(p, PredicateProblem) and bound is None:
        return p
    bound = bound if bound is not None else getattr(p, "bound", DEFAULT_BOUND)

    def is_yes(w, p=p):
        return p.classify_word(w) is Membership.YES

    def is_no(w, p=p):
        return p.classify_word(w) is Membership.NO

    enum_ = None if isinstance(p, RegularProblem) else p.promise_words
    return PredicateProblem(p.alphabet, is_yes, is_no, p.name, bound, enum_, check_disjoint=False)


# -- set operations ----------------------------------------------------------------


def complement_pp(p: PromiseProblem) -> PromiseProblem:
    if isinstance(p, RegularProblem):
        return RegularProblem(p.dfa_no, p.dfa_yes, f"~{p.name}")
    return PredicateProblem(p.alphabet, p.no, p.yes, f"~{p.name}", p.bound, p.enumerator, check_disjoint=False)


def _merged_enumerator(p: PredicateProblem, q: PredicateProblem):
    def words(n):
        yield from p.promise_words(n)
        yield from q.promise_words(n)

    return words


def _binary_predicate(p, q, yes, no, name, check):
    bound = min(getattr(p, "bound", DEFAULT_BOUND), getattr(q, "bound", DEFAULT_BOUND))
    pp, qq = as_predicate(p, bound), as_predicate(q, bound)
    alphabet = sorted(set(p.alphabet) | set(q.alphabet))
    enum_ = None if pp.enumerator is None or qq.enumerator is None else _merged_enumerator(pp, qq)
    # components of p and q see foreign symbols as OutsidePromise
    return PredicateProblem(
        alphabet,
        lambda w: yes(pp.classify_word(w), qq.classify_word(w)),
        lambda w: no(pp.classify_word(w), qq.classify_word(w)),
        name,
        bound,
        enum_,
        check_disjoint=check,
    )


Y, N = Membership.YES, Membership.NO


def intersect_pp(p: PromiseProblem, q: PromiseProblem) -> PromiseProblem:
    name = f"({p.name} & {q.name})"
    if isinstance(p, RegularProblem) and isinstance(q, RegularProblem):
        return RegularProblem(
            ca.dfa_intersection(p.dfa_yes, q.dfa_yes), ca.dfa_intersection(p.dfa_no, q.dfa_no), name
        )
    return _binary_predicate(p, q, lambda a, b: a is Y and b is Y, lambda a, b: a is N and b is N, name, False)


def union_pp(p: PromiseProblem, q: PromiseProblem) -> PromiseProblem:
    name = f"({p.name} | {q.name})"
    if isinstance(p, RegularProblem) and isinstance(q, RegularProblem):
        yes = ca.dfa_union(p.dfa_yes, q.dfa_yes)
        no = ca.dfa_union(p.dfa_no, q.dfa_no)
        clash = ca.product_search(yes, no, lambda pq: pq[0] in yes.accepting and pq[1] in no.accepting)
        if clash is not None:
            raise UnionUndefined(f"union {name} is undefined", clash)
        return RegularProblem(yes, no, name)
    try:
        return _binary_predicate(
            p, q, lambda a, b: Y in (a, b), lambda a, b: N in (a, b), name, True
        )
    except OverlappingComponents as exc:
        raise UnionUndefined(f"union {name} is undefined", exc.witness) from None


def is_subproblem(a: PromiseProblem, b: PromiseProblem, bound: int | None = None) -> Check:
    """A <= B: A_yes ⊆ B_yes and A_no ⊆ B_no (exact for two regular problems)."""
    if isinstance(a, RegularProblem) and isinstance(b, RegularProblem):
        for x, y in ((a.dfa_yes, b.dfa_yes), (a.dfa_no, b.dfa_no)):
            r = ca.dfa_language_included(x, y)
            if not r:
                return r
        return Check(True)
    if bound is None:
        bound = min(getattr(a, "bound", DEFAULT_BOUND), getattr(b, "bound", DEFAULT_BOUND))
    for w in a.promise_words(bound):
        m = a.classify_word(w)
        if m is Membership.OUTSIDE:
            continue
        if _foreign(w, b.alphabet) or b.classify_word(w) is not m:
            return Check(False, w, bound)
    return Check(True, None, bound)


# -- word notation -----------------------------------------------------------------

_TOKEN = re.compile(r"\(|\)|\d+|[^\s()\d]")


def expand_word(text: str) -> str:
    """Expand exponent shorthand: ``a3`` -> ``aaa``, ``(ab2#)3`` -> ``abb#abb#abb#``.

    Text without digits or parentheses is returned unchanged; ``-`` or the
    empty string denote the empty word.
    """
    if text in ("", "-", "ε"):
        return ""
    if not re.search(r"[\d()]", text):
        return text
    stack: list[list[str]] = [[]]
    for tok in _TOKEN.findall(text):
        if tok == "(":
            stack.append([])
        elif tok == ")":
            if len(stack) == 1:
                raise ValueError(f"unbalanced ')' in {text!r}")
            group = "".join(stack.pop())
            stack[-1].append(group)
        elif tok.isdigit():
            if not stack[-1]:
                raise ValueError(f"exponent {tok} with nothing to repeat in {text!r}")
            stack[-1][-1] = stack[-1][-1] * int(tok)
        else:
            stack[-1].append(tok)
    if len(stack) != 1:
        raise ValueError(f"unbalanced '(' in {text!r}")
    return "".join(stack[0])


# -- families --------------------------------------------------------------------


def _require(cond: bool, message: str):
    if not cond:
        raise InvalidParameter(message)


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def make_ANl(N: int, l: int) -> RegularProblem:
    """yes = (a^N)*, no = (a^N)* a^l.  N need not be prime; N = 4 gives the small-solver example."""
    _require(_is_int(N) and N >= 2, f"N must be an integer >= 2, got {N!r}")
    _require(_is_int(l) and 0 < l < N, f"need 0 < l < N, got l={l!r}, N={N}")
    return RegularProblem(ca.cycle_dfa(N, {0}), ca.cycle_dfa(N, {l}), f"A^{{{N},{l}}}")


def make_ANr1r2(N: int, r1: int, r2: int) -> RegularProblem:
    _require(_is_int(N) and N >= 2, f"N must be an integer >= 2, got {N!r}")
    _require(_is_int(r1) and _is_int(r2) and r1 > 0 and r2 > 0, "r1, r2 must be positive integers")
    _require((r1 - r2) % N != 0, f"need r1 ≢ r2 (mod {N})")
    return RegularProblem(ca.cycle_dfa(N, {r1}), ca.cycle_dfa(N, {r2}), f"A^{{{N},{r1},{r2}}}")


def make_appendix(p: int, q: int) -> RegularProblem:
    """yes = (a^p)*, no = (a^q)* a with gcd(p, q) = 2."""
    _require(_is_int(p) and _is_int(q) and p > 2 and q > 2, "need integers p, q > 2")
    _require(math.gcd(p, q) == 2, f"need gcd(p, q) = 2, got gcd({p}, {q}) = {math.gcd(p, q)}")
    return RegularProblem(ca.cycle_dfa(p, {0}), ca.cycle_dfa(q, {1}), f"appendix({p},{q})")


def ap_residues(p: int, hi: float, lo: float) -> tuple[set[int], set[int]]:
    """Residues l < p with cos²(lπ/p) >= hi (yes) and <= lo (no)."""
    yes, no = set(), set()
    for l in range(p):
        c2 = math.cos(l * math.pi / p) ** 2
        if abs(c2 - hi) <= THRESHOLD_GUARD or abs(c2 - lo) <= THRESHOLD_GUARD:
            raise InvalidParameter(f"cos^2({l}π/{p}) = {c2!r} sits on a threshold")
        if c2 >= hi:
            yes.add(l)
        elif c2 <= lo:
            no.add(l)
    return yes, no


def make_Ap(p: int) -> RegularProblem:
    _require(_is_int(p) and p >= 6, f"p must be an integer >= 6, got {p!r}")
    yes, no = ap_residues(p, 2 / 3, 1 / 3)
    return RegularProblem(ca.cycle_dfa(p, yes), ca.cycle_dfa(p, no), f"A({p})")


def make_Ap_eps(p: int, eps: float) -> RegularProblem:
    _require(0 < eps < 0.5, f"eps must lie in (0, 1/2), got {eps}")
    bound = math.pi / math.acos(math.sqrt(1 - eps))
    _require(_is_int(p) and p >= bound, f"need p >= pi/arccos(sqrt(1-eps)) = {bound:.6g}, got {p!r}")
    yes, no = ap_residues(p, 1 - eps, eps)
    return RegularProblem(ca.cycle_dfa(p, yes), ca.cycle_dfa(p, no), f"A({p},{eps:g})")


_AB = re.compile(r"^(a*)(b*)$")


def _ab_counts(word: str):
    m = _AB.match(word)
    return (len(m.group(1)), len(m.group(2))) if m else None


def _ab_enumerator(n: int) -> Iterator[str]:
    for total in range(n + 1):
        for i in range(total + 1):
            yield "a" * i + "b" * (total - i)


def make_Al(l: int, bound: int = DEFAULT_BOUND) -> PredicateProblem:
    """yes: #a = #b; no: #b = #a + l, over {a, b}*."""
    _require(_is_int(l) and l >= 1, f"l must be a positive integer, got {l!r}")

    def yes(w):
        return w.count("a") == w.count("b")

    def no(w):
        return w.count("b") == w.count("a") + l

    return PredicateProblem(("a", "b"), yes, no, f"A^{l}", bound)


def make_Bl(l: int, bound: int = DEFAULT_BOUND) -> PredicateProblem:
    """yes: a^i b^i; no: a^i b^(i+l)."""
    _require(_is_int(l) and l >= 1, f"l must be a positive integer, got {l!r}")

    def yes(w):
        c = _ab_counts(w)
        return c is not None and c[0] == c[1]

    def no(w):
        c = _ab_counts(w)
        return c is not None and c[1] == c[0] + l

    return PredicateProblem(("a", "b"), yes, no, f"B^{l}", bound, _ab_enumerator)


def make_C(bound: int = DEFAULT_BOUND) -> PredicateProblem:
    """yes: a^n b^n; no: a^n b^m with n != m."""

    def yes(w):
        c = _ab_counts(w)
        return c is not None and c[0] == c[1]

    def no(w):
        c = _ab_counts(w)
        return c is not None and c[0] != c[1]

    return PredicateProblem(("a", "b"), yes, no, "C", bound, _ab_enumerator)


def _make_parity_anbn(parity: int, name: str, bound: int) -> PredicateProblem:
    """yes: a^n b^n with n ≡ parity (mod 2); no: a^n b^m, n != m, one of n, m ≢ parity."""

    def yes(w):
        c = _ab_counts(w)
        return c is not None and c[0] == c[1] and c[0] % 2 == parity

    def no(w):
        c = _ab_counts(w)
        return c is not None and c[0] != c[1] and (c[0] % 2 != parity or c[1] % 2 != parity)

    return PredicateProblem(("a", "b"), yes, no, name, bound, _ab_enumerator)


def make_odd_anbn(bound: int = DEFAULT_BOUND) -> PredicateProblem:
    return _make_parity_anbn(1, "odd-anbn", bound)


def make_even_anbn(bound: int = DEFAULT_BOUND) -> PredicateProblem:
    return _make_parity_anbn(0, "even-anbn", bound)


_BLOCK = re.compile(r"(a*)(b*)#")


def polyeq_blocks(word: str):
    """(n, m, t) if ``word = (a^n b^m #)^t`` with t >= 1, else None."""
    if not word or not word.endswith("#"):
        return None
    blocks = _BLOCK.findall(word)
    if sum(len(x) + len(y) + 1 for x, y in blocks) != len(word):
        return None
    shapes = {(len(x), len(y)) for x, y in blocks}
    if len(shapes) != 1:
        return None
    n, m = shapes.pop()
    return n, m, len(blocks)


def make_PloyEQ(eps: float = 1 / 3, bound: int = 128) -> PredicateProblem:
    """yes: (a^n b^n #)^t, no: (a^n b^m #)^t with n != m, both with t >= T(n, m, eps)."""
    from .quantum import polyeq_T

    _require(0 < eps <= 1 / 3, f"eps must lie in (0, 1/3], got {eps}")

    def shape(w):
        c = polyeq_blocks(w)
        if c is None:
            return None
        n, m, t = c
        return (n == m) if t >= polyeq_T(n, m, eps) else None

    def enumerator(max_len):
        for size in range(1, max_len + 1):
            for n in range(size):
                m = size - 1 - n
                for t in range(1, max_len // size + 1):
                    yield ("a" * n + "b" * m + "#") * t

    return PredicateProblem(
        ("#", "a", "b"),
        lambda w: shape(w) is True,
        lambda w: shape(w) is False,
        f"PloyEQ({eps:g})",
        bound,
        enumerator,
    )


FAMILIES = {
    "ANl": (make_ANl, ("N", "l")),
    "ANr1r2": (make_ANr1r2, ("N", "r1", "r2")),
    "appendix": (make_appendix, ("p", "q")),
    "Ap": (make_Ap, ("p",)),
    "Ap_eps": (make_Ap_eps, ("p", "eps")),
    "Al": (make_Al, ("l",)),
    "Bl": (make_Bl, ("l",)),
    "C": (make_C, ()),
    "odd_anbn": (make_odd_anbn, ()),
    "even_anbn": (make_even_anbn, ()),
    "PloyEQ": (make_PloyEQ, ("eps",)),
}


def make_family(name: str, params: dict) -> PromiseProblem:
    """Build a family from a ``{"family": name, "params": {...}}`` style descriptor."""
    if name not in FAMILIES:
        raise InvalidParameter(f"unknown family {name!r}; known: {sorted(FAMILIES)}")
    fn, required = FAMILIES[name]
    missing = [k for k in required if params.get(k) is None]
    if missing:
        raise InvalidParameter(f"family {name} needs parameters {missing}")
    kwargs = {k: params[k] for k in required}
    if "bound" in params and params["bound"] is not None and name in ("Al", "Bl", "C", "odd_anbn", "even_anbn", "PloyEQ"):
        kwargs["bound"] = params["bound"]
    return fn(**kwargs)
