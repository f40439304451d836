"""Bilinear machines over exact rationals and the pvDFA decision procedures.

Equivalence of two BLMs is decided by forward basis closure: breadth-first
over words, keep a row vector ``(π1 ⊕ π2)·M(w)`` only if it is linearly
independent of the vectors kept so far.  The kept vectors span every
reachable vector, so the machines agree everywhere iff every kept vector is
annihilated by ``η1 ⊕ -η2``.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from . import classical as ca
from .classical import Check, PvDfa
from .errors import AlphabetMismatch, InvalidMachine, UnknownSymbol


@dataclass(frozen=True)
class Blm:
    alphabet: tuple[str, ...]
    pi: tuple[Fraction, ...]
    matrices: dict  # symbol -> n x n nested tuple of Fractions
    eta: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        pi = tuple(Fraction(x) for x in self.pi)
        eta = tuple(Fraction(x) for x in self.eta)
        n = len(pi)
        if len(eta) != n:
            raise InvalidMachine(f"pi has {n} entries but eta has {len(eta)}")
        mats = {}
        for sym in self.alphabet:
            if sym not in self.matrices:
                raise InvalidMachine(f"no matrix for symbol {sym!r}")
            m = tuple(tuple(Fraction(x) for x in row) for row in self.matrices[sym])
            if len(m) != n or any(len(row) != n for row in m):
                raise InvalidMachine(f"M({sym!r}) is not {n}x{n}")
            mats[sym] = m
        object.__setattr__(self, "pi", pi)
        object.__setattr__(self, "eta", eta)
        object.__setattr__(self, "matrices", mats)

    @property
    def num_states(self) -> int:
        return len(self.pi)


def _vec_mat(v, m):
    n = len(v)
    return tuple(sum((v[i] * m[i][j] for i in range(n) if v[i]), Fraction(0)) for j in range(n))


def _dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def blm_word_fn(b: Blm, word: str) -> Fraction:
    """π M(x1) ... M(xn) η; the empty word gives π·η."""
    v = b.pi
    for sym in word:
        m = b.matrices.get(sym)
        if m is None:
            raise UnknownSymbol(sym, b.alphabet)
        v = _vec_mat(v, m)
    return _dot(v, b.eta)


class _Echelon:
    """Incremental row-echelon basis over the rationals."""

    def __init__(self):
        self.rows: list[tuple[int, list[Fraction]]] = []  # (pivot column, row)

    def reduce(self, v) -> list[Fraction]:
        v = list(v)
        for pivot, row in self.rows:
            if v[pivot]:
                f = v[pivot] / row[pivot]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def add(self, v) -> bool:
        r = self.reduce(v)
        for k, x in enumerate(r):
            if x:
                self.rows.append((k, r))
                return True
        return False


def blm_basis(b1: Blm, b2: Blm) -> list[tuple[str, tuple]]:
    """(word, vector) pairs of the forward basis of the direct-sum machine, in BFS order."""
    if set(b1.alphabet) != set(b2.alphabet):
        raise AlphabetMismatch(f"alphabets differ: {list(b1.alphabet)} vs {list(b2.alphabet)}")
    n1 = b1.num_states
    symbols = sorted(b1.alphabet)
    mats = {}
    for s in symbols:
        m1, m2 = b1.matrices[s], b2.matrices[s]
        mats[s] = (m1, m2)
    echelon = _Echelon()
    start = b1.pi + b2.pi
    basis = []
    queue = deque()
    if echelon.add(start):
        basis.append(("", start))
        queue.append(("", start))
    while queue:
        word, v = queue.popleft()
        for s in symbols:
            m1, m2 = mats[s]
            w = _vec_mat(v[:n1], m1) + _vec_mat(v[n1:], m2)
            if echelon.add(w):
                basis.append((word + s, w))
                queue.append((word + s, w))
    return basis


def blm_equivalent(b1: Blm, b2: Blm) -> Check:
    """Exact equivalence; on failure the witness is a shortest distinguishing word."""
    eta = b1.eta + tuple(-x for x in b2.eta)
    for word, v in blm_basis(b1, b2):
        if _dot(v, eta) != 0:
            return Check(False, word)
    return Check(True)


def pvdfa_to_blm(a: PvDfa) -> Blm:
    """π = indicator of s0, 0/1 transition matrices, η = 1 on S_a, 2 on S_r, 0 elsewhere."""
    a = ca.as_pvdfa(a)
    n = a.num_states
    pi = [1 if s == a.initial else 0 for s in range(n)]
    mats = {}
    for k, sym in enumerate(a.alphabet):
        mats[sym] = [[1 if a.delta[s][k] == t else 0 for t in range(n)] for s in range(n)]
    eta = [1 if s in a.accepting else 2 if s in a.rejecting else 0 for s in range(n)]
    return Blm(a.alphabet, pi, mats, eta)


def pvdfa_equivalent(a: PvDfa, b: PvDfa) -> Check:
    """P(a) == P(b), decided through the associated bilinear machines."""
    a, b = ca.unify_alphabets(ca.as_pvdfa(a), ca.as_pvdfa(b))
    return blm_equivalent(pvdfa_to_blm(a), pvdfa_to_blm(b))


class Relation(enum.Enum):
    EQUAL = "Equal"
    LESS = "Less"
    GREATER = "Greater"
    INCOMPARABLE = "Incomparable"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Comparison:
    relation: Relation
    witness_yes: str | None = None
    witness_no: str | None = None

    def to_dict(self) -> dict:
        return {"relation": self.relation.value, "witness_yes": self.witness_yes, "witness_no": self.witness_no}


def pvdfa_compare(a: PvDfa, b: PvDfa) -> Comparison:
    """Order of P(a) and P(b) under componentwise inclusion.

    ``witness_yes`` / ``witness_no`` are shortest words on which the yes
    (resp. no) components differ, or None where they coincide.
    """
    a, b = ca.unify_alphabets(ca.as_pvdfa(a), ca.as_pvdfa(b))
    ay, an = ca.component_dfas(a)
    by, bn = ca.component_dfas(b)
    wy = ca.dfa_equivalent(ay, by).witness
    wn = ca.dfa_equivalent(an, bn).witness
    if pvdfa_equivalent(a, b):
        return Comparison(Relation.EQUAL)
    if ca.dfa_language_included(ay, by) and ca.dfa_language_included(an, bn):
        return Comparison(Relation.LESS, wy, wn)
    if ca.dfa_language_included(by, ay) and ca.dfa_language_included(bn, an):
        return Comparison(Relation.GREATER, wy, wn)
    return Comparison(Relation.INCOMPARABLE, wy, wn)


def is_maximally_powerful(a: PvDfa) -> bool:
    """True iff every reachable state of the minimized machine is accepting or rejecting."""
    return ca.minimize_pvdfa(a).is_dfa
