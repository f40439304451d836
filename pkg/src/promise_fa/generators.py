"""Seeded random machines for property checks and the verification suites."""
from __future__ import annotations

import random
from fractions import Fraction

from . import classical as ca
from .classical import Dfa, PvDfa
from .decision import Blm


def random_dfa(rng: random.Random, num_states: int, alphabet=("a", "b")) -> Dfa:
    """Uniform transition table; the result is trimmed to its reachable part."""
    delta = [[rng.randrange(num_states) for _ in alphabet] for _ in range(num_states)]
    accepting = {s for s in range(num_states) if rng.random() < 0.5}
    return ca.canonical(Dfa(alphabet, delta, 0, accepting))


def random_pvdfa(rng: random.Random, num_states: int, alphabet=("a", "b")) -> PvDfa:
    delta = [[rng.randrange(num_states) for _ in alphabet] for _ in range(num_states)]
    labels = [rng.choice("arn") for _ in range(num_states)]
    acc = {s for s, c in enumerate(labels) if c == "a"}
    rej = {s for s, c in enumerate(labels) if c == "r"}
    return ca.canonical(PvDfa(alphabet, delta, 0, acc, rej))


def random_disjoint_pair(rng: random.Random, max_states: int = 5, alphabet=("a", "b")) -> tuple[Dfa, Dfa]:
    """Two DFAs with disjoint, nonempty languages (rejection sampling)."""
    while True:
        a = random_dfa(rng, rng.randint(1, max_states), alphabet)
        b = random_dfa(rng, rng.randint(1, max_states), alphabet)
        if ca.shortest_accepted(a) is None or ca.shortest_accepted(b) is None:
            continue
        if ca.shortest_accepted(ca.dfa_intersection(a, b)) is None:
            return a, b


def permute_states(m: PvDfa, rng: random.Random) -> PvDfa:
    """Same machine with its state indices shuffled (initial state moves too)."""
    n = m.num_states
    perm = list(range(n))
    rng.shuffle(perm)
    delta = [None] * n
    for s in range(n):
        delta[perm[s]] = [perm[t] for t in m.delta[s]]
    return PvDfa(
        m.alphabet,
        delta,
        perm[m.initial],
        {perm[s] for s in m.accepting},
        {perm[s] for s in m.rejecting},
    )


def pad_with_duplicate(m: PvDfa) -> PvDfa:
    """Add a copy of the initial state (same label and successors); P(m) is unchanged."""
    n = m.num_states
    delta = [list(row) for row in m.delta] + [list(m.delta[m.initial])]
    acc = set(m.accepting) | ({n} if m.initial in m.accepting else set())
    rej = set(m.rejecting) | ({n} if m.initial in m.rejecting else set())
    # route one incoming edge of the initial state (if any) to the copy
    for s in range(n):
        for k, t in enumerate(delta[s]):
            if t == m.initial:
                delta[s][k] = n
                return PvDfa(m.alphabet, delta, m.initial, acc, rej)
    return PvDfa(m.alphabet, delta, m.initial, acc, rej)


def _rand_fraction(rng: random.Random, span: int = 3) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, span))


def random_blm(rng: random.Random, n: int, alphabet=("a", "b"), density: float = 0.6) -> Blm:
    def entry():
        return _rand_fraction(rng) if rng.random() < density else Fraction(0)

    pi = [entry() for _ in range(n)]
    if not any(pi):
        pi[0] = Fraction(1)
    mats = {s: [[entry() for _ in range(n)] for _ in range(n)] for s in alphabet}
    eta = [entry() for _ in range(n)]
    return Blm(alphabet, pi, mats, eta)


def _invertible(rng: random.Random, n: int):
    """Unit lower-triangular times unit upper-triangular: always invertible over Q."""
    lower = [[Fraction(1) if i == j else (_rand_fraction(rng) if j < i else Fraction(0)) for j in range(n)] for i in range(n)]
    upper = [[Fraction(1) if i == j else (_rand_fraction(rng) if j > i else Fraction(0)) for j in range(n)] for i in range(n)]
    return _matmul(lower, upper), _inverse_lu(lower, upper)


def _matmul(x, y):
    return [[sum((x[i][k] * y[k][j] for k in range(len(y))), Fraction(0)) for j in range(len(y[0]))] for i in range(len(x))]


def _inverse_lu(lower, upper):
    n = len(lower)

    def inv_unit_triangular(t, is_lower):
        inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        order = range(n) if is_lower else range(n - 1, -1, -1)
        for i in order:
            ks = range(i) if is_lower else range(i + 1, n)
            for j in range(n):
                inv[i][j] -= sum((t[i][k] * inv[k][j] for k in ks), Fraction(0))
        return inv

    return _matmul(inv_unit_triangular(upper, False), inv_unit_triangular(lower, True))


def change_of_basis(b: Blm, rng: random.Random) -> Blm:
    """π P, P⁻¹ M P, P⁻¹ η: the same word function with different coordinates."""
    n = b.num_states
    p, p_inv = _invertible(rng, n)
    pi = _matmul([list(b.pi)], p)[0]
    mats = {s: _matmul(_matmul(p_inv, [list(r) for r in m]), p) for s, m in b.matrices.items()}
    eta = [row[0] for row in _matmul(p_inv, [[x] for x in b.eta])]
    return Blm(b.alphabet, pi, mats, eta)


def add_dead_component(b: Blm, rng: random.Random, extra: int = 1) -> Blm:
    """Direct sum with a block that starts at zero, so it never contributes."""
    n = b.num_states
    size = n + extra
    mats = {}
    for s, m in b.matrices.items():
        big = [[Fraction(0)] * size for _ in range(size)]
        for i in range(n):
            for j in range(n):
                big[i][j] = m[i][j]
        for i in range(n, size):
            for j in range(n, size):
                big[i][j] = _rand_fraction(rng)
        mats[s] = big
    pi = list(b.pi) + [Fraction(0)] * extra
    eta = list(b.eta) + [_rand_fraction(rng) for _ in range(extra)]
    return Blm(b.alphabet, pi, mats, eta)
