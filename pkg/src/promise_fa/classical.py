"""Classical machines: DFA, promise-version DFA (pvDFA) and PFA.

States are integers ``0..n-1``; words are plain strings of single-character
symbols.  Every machine is an immutable dataclass and every operation below
is a pure function that returns a new machine.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Sequence

from .errors import (
    InvalidMachine,
    OverlappingComponents,
    UnionUndefined,
    UnknownSymbol,
    WordTooShort,
)

FLOAT_ROW_TOL = 1e-9


class Verdict(enum.Enum):
    ACCEPT = "Accept"
    REJECT = "Reject"
    NEUTRAL = "Neutral"

    def __str__(self):
        return self.value

    def flipped(self) -> "Verdict":
        if self is Verdict.ACCEPT:
            return Verdict.REJECT
        if self is Verdict.REJECT:
            return Verdict.ACCEPT
        return self


@dataclass(frozen=True)
class Check:
    """Outcome of a decision procedure: truthy iff ``holds``.

    ``witness`` is a word demonstrating failure when ``holds`` is false.
    ``bound`` is set when the check was only carried out on words of length
    at most ``bound``.
    """

    holds: bool
    witness: str | None = None
    bound: int | None = None

    def __bool__(self):
        return self.holds


def _check_alphabet(alphabet) -> tuple[str, ...]:
    alphabet = tuple(alphabet)
    if not alphabet:
        raise InvalidMachine("alphabet must be nonempty")
    for s in alphabet:
        if not isinstance(s, str) or len(s) != 1:
            raise InvalidMachine(f"alphabet symbols must be single characters, got {s!r}")
    if len(set(alphabet)) != len(alphabet):
        raise InvalidMachine(f"alphabet has repeated symbols: {list(alphabet)}")
    return alphabet


@dataclass(frozen=True)
class Dfa:
    """Complete DFA.  ``delta[state][k]`` is the successor on ``alphabet[k]``."""

    alphabet: tuple[str, ...]
    delta: tuple[tuple[int, ...], ...]
    initial: int = 0
    accepting: frozenset[int] = frozenset()
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", _check_alphabet(self.alphabet))
        object.__setattr__(self, "delta", tuple(tuple(int(t) for t in row) for row in self.delta))
        object.__setattr__(self, "accepting", frozenset(int(s) for s in self.accepting))
        object.__setattr__(self, "_index", {s: k for k, s in enumerate(self.alphabet)})
        self._validate()

    def _validate(self):
        n = len(self.delta)
        if n == 0:
            raise InvalidMachine("a machine needs at least one state")
        for s, row in enumerate(self.delta):
            if len(row) != len(self.alphabet):
                raise InvalidMachine(
                    f"transition row of state {s} has {len(row)} entries, "
                    f"expected {len(self.alphabet)} (transition must be total)"
                )
            for t in row:
                if not 0 <= t < n:
                    raise InvalidMachine(f"state {s} has successor {t} outside 0..{n - 1}")
        if not 0 <= self.initial < n:
            raise InvalidMachine(f"initial state {self.initial} outside 0..{n - 1}")
        bad = sorted(s for s in self.accepting if not 0 <= s < n)
        if bad:
            raise InvalidMachine(f"accepting states {bad} outside 0..{n - 1}")

    @property
    def num_states(self) -> int:
        return len(self.delta)

    def symbol_index(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise UnknownSymbol(symbol, self.alphabet) from None

    def step(self, state: int, symbol: str) -> int:
        return self.delta[state][self.symbol_index(symbol)]

    def run(self, word: str, start: int | None = None) -> int:
        state = self.initial if start is None else start
        for symbol in word:
            state = self.delta[state][self.symbol_index(symbol)]
        return state

    def trace(self, word: str) -> list[int]:
        states = [self.initial]
        for symbol in word:
            states.append(self.delta[states[-1]][self.symbol_index(symbol)])
        return states

    def accepts(self, word: str) -> bool:
        return self.run(word) in self.accepting

    def reachable(self) -> list[int]:
        """Reachable states in breadth-first discovery order."""
        order = [self.initial]
        seen = {self.initial}
        i = 0
        while i < len(order):
            for t in self.delta[order[i]]:
                if t not in seen:
                    seen.add(t)
                    order.append(t)
            i += 1
        return order


@dataclass(frozen=True)
class PvDfa(Dfa):
    """DFA with disjoint accepting and rejecting sets; other states are neutral."""

    rejecting: frozenset[int] = frozenset()

    def _validate(self):
        object.__setattr__(self, "rejecting", frozenset(int(s) for s in self.rejecting))
        super()._validate()
        n = len(self.delta)
        bad = sorted(s for s in self.rejecting if not 0 <= s < n)
        if bad:
            raise InvalidMachine(f"rejecting states {bad} outside 0..{n - 1}")
        both = sorted(self.accepting & self.rejecting)
        if both:
            raise InvalidMachine(f"states {both} are both accepting and rejecting")

    def verdict_of(self, state: int) -> Verdict:
        if state in self.accepting:
            return Verdict.ACCEPT
        if state in self.rejecting:
            return Verdict.REJECT
        return Verdict.NEUTRAL

    def classify(self, word: str) -> Verdict:
        return self.verdict_of(self.run(word))

    @property
    def is_dfa(self) -> bool:
        return len(self.accepting) + len(self.rejecting) == self.num_states


def dfa_from_map(alphabet, transitions: dict, initial=0, accepting=()) -> Dfa:
    """Build a Dfa from ``{symbol: [successor of state 0, state 1, ...]}``."""
    alphabet = tuple(alphabet)
    n = len(transitions[alphabet[0]])
    delta = [[transitions[s][q] for s in alphabet] for q in range(n)]
    return Dfa(alphabet, delta, initial, accepting)


def pvdfa_from_map(alphabet, transitions: dict, initial=0, accepting=(), rejecting=()) -> PvDfa:
    d = dfa_from_map(alphabet, transitions, initial, accepting)
    return PvDfa(d.alphabet, d.delta, d.initial, d.accepting, rejecting)


def cycle_dfa(n: int, accepting_residues: Iterable[int], symbol: str = "a") -> Dfa:
    """Unary ``n``-cycle accepting ``a^k`` iff ``k mod n`` is in the residue set."""
    return Dfa((symbol,), [((i + 1) % n,) for i in range(n)], 0, {r % n for r in accepting_residues})


def cycle_pvdfa(n: int, accepting_residues, rejecting_residues, symbol: str = "a") -> PvDfa:
    return PvDfa(
        (symbol,),
        [((i + 1) % n,) for i in range(n)],
        0,
        {r % n for r in accepting_residues},
        {r % n for r in rejecting_residues},
    )


def as_pvdfa(dfa: Dfa) -> PvDfa:
    """View a DFA as the pvDFA whose rejecting set is every non-accepting state."""
    if isinstance(dfa, PvDfa):
        return dfa
    rest = frozenset(range(dfa.num_states)) - dfa.accepting
    return PvDfa(dfa.alphabet, dfa.delta, dfa.initial, dfa.accepting, rest)


def run(machine: Dfa, word: str) -> int:
    return machine.run(word)


def classify(pvdfa: PvDfa, word: str) -> Verdict:
    return as_pvdfa(pvdfa).classify(word)


def complement(pvdfa: PvDfa) -> PvDfa:
    return PvDfa(pvdfa.alphabet, pvdfa.delta, pvdfa.initial, pvdfa.rejecting, pvdfa.accepting)


def dfa_complement(dfa: Dfa) -> Dfa:
    return Dfa(dfa.alphabet, dfa.delta, dfa.initial, frozenset(range(dfa.num_states)) - dfa.accepting)


def component_dfas(pvdfa: PvDfa) -> tuple[Dfa, Dfa]:
    """(A_y, A_n): the same transition structure with S_a resp. S_r accepting."""
    yes = Dfa(pvdfa.alphabet, pvdfa.delta, pvdfa.initial, pvdfa.accepting)
    no = Dfa(pvdfa.alphabet, pvdfa.delta, pvdfa.initial, pvdfa.rejecting)
    return yes, no


# -- alphabets ---------------------------------------------------------------


def lift(machine: Dfa, alphabet: Sequence[str]) -> Dfa:
    """Extend ``machine`` to a superset alphabet.

    New symbols lead to a fresh sink state that is neither accepting nor
    rejecting, so the recognized language (promise problem) is unchanged.
    """
    extra = [s for s in sorted(set(alphabet)) if s not in machine._index]
    missing = set(machine.alphabet) - set(alphabet)
    if missing:
        raise InvalidMachine(f"cannot lift to an alphabet missing {sorted(missing)}")
    if not extra:
        return machine
    sink = machine.num_states
    width = len(machine.alphabet) + len(extra)
    delta = [row + (sink,) * len(extra) for row in machine.delta]
    delta.append((sink,) * width)
    new_alphabet = machine.alphabet + tuple(extra)
    if isinstance(machine, PvDfa):
        return PvDfa(new_alphabet, delta, machine.initial, machine.accepting, machine.rejecting)
    return Dfa(new_alphabet, delta, machine.initial, machine.accepting)


def unify_alphabets(a: Dfa, b: Dfa) -> tuple[Dfa, Dfa]:
    if set(a.alphabet) == set(b.alphabet):
        return a, b
    union = sorted(set(a.alphabet) | set(b.alphabet))
    return lift(a, union), lift(b, union)


# -- breadth-first search ----------------------------------------------------


def bfs_word(
    start: Hashable,
    successors: Callable[[Hashable], Iterable[tuple[str, Hashable]]],
    is_target: Callable[[Hashable], bool],
) -> str | None:
    """Shortest (then length-lexicographically least) word reaching a target node.

    ``successors`` must yield its edges in increasing symbol order.
    """
    parent: dict = {start: None}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        if is_target(node):
            letters = []
            while parent[node] is not None:
                node, symbol = parent[node]
                letters.append(symbol)
            return "".join(reversed(letters))
        for symbol, nxt in successors(node):
            if nxt not in parent:
                parent[nxt] = (node, symbol)
                queue.append(nxt)
    return None


def _pair_successors(a: Dfa, b: Dfa):
    symbols = sorted(a.alphabet)
    cols = [(a.symbol_index(s), b.symbol_index(s)) for s in symbols]

    def successors(pair):
        p, q = pair
        for s, (i, j) in zip(symbols, cols):
            yield s, (a.delta[p][i], b.delta[q][j])

    return successors


def product_search(a: Dfa, b: Dfa, is_target: Callable[[tuple[int, int]], bool]) -> str | None:
    """Shortest word driving the synchronous product of ``a`` and ``b`` into a target pair."""
    a, b = unify_alphabets(a, b)
    return bfs_word((a.initial, b.initial), _pair_successors(a, b), is_target)


def shortest_accepted(dfa: Dfa) -> str | None:
    symbols = sorted(dfa.alphabet)

    def successors(q):
        for s in symbols:
            yield s, dfa.step(q, s)

    return bfs_word(dfa.initial, successors, lambda q: q in dfa.accepting)


def _product(a: Dfa, b: Dfa):
    """Reachable part of the synchronous product: (pairs in BFS order, delta rows)."""
    a, b = unify_alphabets(a, b)
    cols = [(k, b.symbol_index(s)) for k, s in enumerate(a.alphabet)]
    start = (a.initial, b.initial)
    index = {start: 0}
    pairs = [start]
    delta = []
    i = 0
    while i < len(pairs):
        p, q = pairs[i]
        row = []
        for ka, kb in cols:
            nxt = (a.delta[p][ka], b.delta[q][kb])
            if nxt not in index:
                index[nxt] = len(pairs)
                pairs.append(nxt)
            row.append(index[nxt])
        delta.append(tuple(row))
        i += 1
    return a.alphabet, pairs, delta


def dfa_intersection(a: Dfa, b: Dfa) -> Dfa:
    a, b = unify_alphabets(a, b)
    alphabet, pairs, delta = _product(a, b)
    acc = {k for k, (p, q) in enumerate(pairs) if p in a.accepting and q in b.accepting}
    return Dfa(alphabet, delta, 0, acc)


def dfa_union(a: Dfa, b: Dfa) -> Dfa:
    a, b = unify_alphabets(a, b)
    alphabet, pairs, delta = _product(a, b)
    acc = {k for k, (p, q) in enumerate(pairs) if p in a.accepting or q in b.accepting}
    return Dfa(alphabet, delta, 0, acc)


# -- product constructions on promise machines --------------------------------


def recognizer_from_components(dfa_yes: Dfa, dfa_no: Dfa) -> PvDfa:
    """pvDFA recognizing (L(dfa_yes), L(dfa_no)); the languages must be disjoint."""
    yes, no = unify_alphabets(dfa_yes, dfa_no)
    clash = product_search(yes, no, lambda pq: pq[0] in yes.accepting and pq[1] in no.accepting)
    if clash is not None:
        raise OverlappingComponents("yes and no languages intersect", clash)
    alphabet, pairs, delta = _product(yes, no)
    acc = {k for k, (p, q) in enumerate(pairs) if p in yes.accepting and q not in no.accepting}
    rej = {k for k, (p, q) in enumerate(pairs) if p not in yes.accepting and q in no.accepting}
    return PvDfa(alphabet, delta, 0, acc, rej)


def intersect_recognizers(a: PvDfa, b: PvDfa) -> PvDfa:
    a, b = unify_alphabets(as_pvdfa(a), as_pvdfa(b))
    alphabet, pairs, delta = _product(a, b)
    acc = {k for k, (p, q) in enumerate(pairs) if p in a.accepting and q in b.accepting}
    rej = {k for k, (p, q) in enumerate(pairs) if p in a.rejecting and q in b.rejecting}
    return PvDfa(alphabet, delta, 0, acc, rej)


def union_witness(a: PvDfa, b: PvDfa) -> str | None:
    """Shortest word in (A_yes ∪ B_yes) ∩ (A_no ∪ B_no), or None if the union exists."""
    a, b = unify_alphabets(as_pvdfa(a), as_pvdfa(b))

    def forbidden(pq):
        p, q = pq
        return (p in a.accepting or q in b.accepting) and (p in a.rejecting or q in b.rejecting)

    return product_search(a, b, forbidden)


def union_recognizers(a: PvDfa, b: PvDfa) -> PvDfa:
    a, b = unify_alphabets(as_pvdfa(a), as_pvdfa(b))
    witness = union_witness(a, b)
    if witness is not None:
        raise UnionUndefined("union of the promise problems is undefined", witness)
    alphabet, pairs, delta = _product(a, b)
    acc = {k for k, (p, q) in enumerate(pairs) if p in a.accepting or q in b.accepting}
    rej = {k for k, (p, q) in enumerate(pairs) if p in a.rejecting or q in b.rejecting}
    return PvDfa(alphabet, delta, 0, acc, rej)


# -- pumping -------------------------------------------------------------------


def pump_decompose(machine: Dfa, word: str) -> tuple[str, str, str]:
    """Split ``word = x y z`` at the first repeated state of the run.

    Guarantees ``|xy| <= |S|``, ``|y| >= 1`` and ``run(x) == run(xy)``.
    """
    if len(word) < machine.num_states:
        raise WordTooShort(f"|word| = {len(word)} < {machine.num_states} states")
    seen: dict[int, int] = {}
    for j, state in enumerate(machine.trace(word)):
        if state in seen:
            i = seen[state]
            return word[:i], word[i:j], word[j:]
        seen[state] = j
    raise AssertionError("pigeonhole violated")  # unreachable for |word| >= |S|


# -- inclusion and minimization --------------------------------------------------


def dfa_language_included(a: Dfa, b: Dfa) -> Check:
    """L(a) ⊆ L(b); on failure the witness is a shortest word of L(a) minus L(b)."""
    a, b = unify_alphabets(a, b)
    w = product_search(a, b, lambda pq: pq[0] in a.accepting and pq[1] not in b.accepting)
    return Check(w is None, w)


def dfa_equivalent(a: Dfa, b: Dfa) -> Check:
    a, b = unify_alphabets(a, b)
    w = product_search(a, b, lambda pq: (pq[0] in a.accepting) != (pq[1] in b.accepting))
    return Check(w is None, w)


def _moore_partition(machine: Dfa, output: Callable[[int], Hashable]) -> tuple[list[int], dict[int, int]]:
    states = machine.reachable()
    outputs = {}
    block = {}
    for s in states:
        block[s] = outputs.setdefault(output(s), len(outputs))
    count = len(outputs)
    while True:
        signatures: dict = {}
        new_block = {}
        for s in states:
            sig = (block[s],) + tuple(block[t] for t in machine.delta[s])
            new_block[s] = signatures.setdefault(sig, len(signatures))
        block = new_block
        if len(signatures) == count:
            return states, block
        count = len(signatures)


def _quotient(machine: Dfa, output: Callable[[int], Hashable]):
    states, block = _moore_partition(machine, output)
    rep: dict[int, int] = {}
    for s in states:
        rep.setdefault(block[s], s)
    # block ids follow BFS order of their first member, so the quotient is canonical
    delta = [tuple(block[t] for t in machine.delta[rep[b]]) for b in range(len(rep))]
    return delta, rep, block[machine.initial]


def canonical(machine: Dfa) -> Dfa:
    """Drop unreachable states and renumber the rest in BFS order."""
    order = machine.reachable()
    idx = {s: k for k, s in enumerate(order)}
    delta = [tuple(idx[t] for t in machine.delta[s]) for s in order]
    acc = {idx[s] for s in machine.accepting if s in idx}
    if isinstance(machine, PvDfa):
        rej = {idx[s] for s in machine.rejecting if s in idx}
        return PvDfa(machine.alphabet, delta, 0, acc, rej)
    return Dfa(machine.alphabet, delta, 0, acc)


def minimize_dfa(dfa: Dfa) -> Dfa:
    delta, rep, init = _quotient(dfa, lambda s: s in dfa.accepting)
    acc = {b for b, s in rep.items() if s in dfa.accepting}
    return canonical(Dfa(dfa.alphabet, delta, init, acc))


def minimize_pvdfa(pvdfa: PvDfa) -> PvDfa:
    """Moore minimization with the three-valued output Accept/Reject/Neutral."""
    pvdfa = as_pvdfa(pvdfa)
    delta, rep, init = _quotient(pvdfa, pvdfa.verdict_of)
    acc = {b for b, s in rep.items() if s in pvdfa.accepting}
    rej = {b for b, s in rep.items() if s in pvdfa.rejecting}
    return canonical(PvDfa(pvdfa.alphabet, delta, init, acc, rej))


# -- probabilistic automata ----------------------------------------------------


def _as_number(x, exact: bool):
    if exact:
        if isinstance(x, float):
            raise InvalidMachine(f"float entry {x!r} in an exact PFA")
        return Fraction(x)
    return float(Fraction(x)) if isinstance(x, str) else float(x)


@dataclass(frozen=True)
class Pfa:
    """Row-stochastic matrix per symbol; exact rationals unless ``exact=False``."""

    alphabet: tuple[str, ...]
    matrices: tuple  # matrices[k] is the matrix of alphabet[k], as nested tuples
    initial: tuple
    accepting: frozenset[int] = frozenset()
    exact: bool = True

    def __post_init__(self):
        object.__setattr__(self, "alphabet", _check_alphabet(self.alphabet))
        conv = lambda x: _as_number(x, self.exact)  # noqa: E731
        mats = tuple(tuple(tuple(conv(x) for x in row) for row in m) for m in self.matrices)
        object.__setattr__(self, "matrices", mats)
        object.__setattr__(self, "initial", tuple(conv(x) for x in self.initial))
        object.__setattr__(self, "accepting", frozenset(int(s) for s in self.accepting))
        n = len(self.initial)
        if len(mats) != len(self.alphabet):
            raise InvalidMachine(f"{len(mats)} matrices for {len(self.alphabet)} symbols")
        self._check_distribution(self.initial, "initial distribution")
        for sym, m in zip(self.alphabet, mats):
            if len(m) != n or any(len(row) != n for row in m):
                raise InvalidMachine(f"matrix of {sym!r} is not {n}x{n}")
            for r, row in enumerate(m):
                self._check_distribution(row, f"row {r} of matrix {sym!r}")
        bad = sorted(s for s in self.accepting if not 0 <= s < n)
        if bad:
            raise InvalidMachine(f"accepting states {bad} outside 0..{n - 1}")

    def _check_distribution(self, vec, what):
        if any(x < 0 or x > 1 for x in vec):
            raise InvalidMachine(f"{what} has entries outside [0, 1]")
        total = sum(vec)
        ok = total == 1 if self.exact else abs(total - 1) <= FLOAT_ROW_TOL
        if not ok:
            raise InvalidMachine(f"{what} sums to {total}, not 1")

    @property
    def num_states(self) -> int:
        return len(self.initial)

    @classmethod
    def from_dfa(cls, dfa: Dfa) -> "Pfa":
        n = dfa.num_states
        mats = []
        for k in range(len(dfa.alphabet)):
            mats.append([[1 if dfa.delta[s][k] == t else 0 for t in range(n)] for s in range(n)])
        init = [1 if s == dfa.initial else 0 for s in range(n)]
        return cls(dfa.alphabet, mats, init, dfa.accepting)


def pfa_distribution(pfa: Pfa, word: str):
    vec = list(pfa.initial)
    index = {s: k for k, s in enumerate(pfa.alphabet)}
    n = pfa.num_states
    for symbol in word:
        if symbol not in index:
            raise UnknownSymbol(symbol, pfa.alphabet)
        m = pfa.matrices[index[symbol]]
        vec = [sum(vec[i] * m[i][j] for i in range(n)) for j in range(n)]
    return vec


def pfa_accept_prob(pfa: Pfa, word: str):
    """π · M(σ1)···M(σn) · χ_accept (a Fraction for exact machines)."""
    vec = pfa_distribution(pfa, word)
    p = sum(vec[s] for s in pfa.accepting) if pfa.accepting else (Fraction(0) if pfa.exact else 0.0)
    if not pfa.exact:
        p = min(max(p, 0.0), 1.0)
    return p
