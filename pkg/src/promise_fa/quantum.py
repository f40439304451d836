"""Measure-once 1QFA, its promise version, and 1QCFA with classical control.

Amplitudes are double-precision complex numpy arrays.  End-markers are
injected by the simulators; input words never contain them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .classical import Verdict, _check_alphabet
from .errors import InvalidMachine, InvalidParameter, NonSquare, NonTerminating, UnknownSymbol

LEFT_END = "¢"
RIGHT_END = "$"
UNITARY_TOL = 1e-9
# Frobenius tolerance for projective measurements
PROJECTOR_TOL = 1e-9

SQRT2_PI = math.sqrt(2) * math.pi


def check_unitary(matrix, tol: float = UNITARY_TOL) -> bool:
    """True iff ``||U†U - I||_F <= tol``."""
    u = np.asarray(matrix, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise NonSquare(f"matrix of shape {u.shape} is not square")
    return float(np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0]))) <= tol


def rotation(angle: float) -> np.ndarray:
    """[[cos, -sin], [sin, cos]]."""
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s], [s, c]], dtype=complex)


def _prepare_unitaries(alphabet, unitaries: dict, dim: int) -> dict:
    out = {}
    for sym in tuple(alphabet) + (LEFT_END, RIGHT_END):
        u = unitaries.get(sym)
        u = np.eye(dim, dtype=complex) if u is None else np.array(u, dtype=complex)
        if u.shape != (dim, dim):
            raise InvalidMachine(f"U[{sym!r}] has shape {u.shape}, expected {(dim, dim)}")
        if not check_unitary(u):
            raise InvalidMachine(f"U[{sym!r}] is not unitary")
        u.setflags(write=False)
        out[sym] = u
    extra = set(unitaries) - set(out)
    if extra:
        raise InvalidMachine(f"unitaries given for unknown symbols {sorted(extra)}")
    return out


@dataclass(frozen=True, eq=False)
class Mo1Qfa:
    """Measure-once 1QFA starting in |0>; end-marker unitaries default to I."""

    dimension: int
    alphabet: tuple[str, ...]
    unitaries: dict
    accepting: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "alphabet", _check_alphabet(self.alphabet))
        if LEFT_END in self.alphabet or RIGHT_END in self.alphabet:
            raise InvalidMachine("end-markers cannot be input symbols")
        object.__setattr__(self, "unitaries", _prepare_unitaries(self.alphabet, self.unitaries, self.dimension))
        object.__setattr__(self, "accepting", frozenset(int(q) for q in self.accepting))
        self._check_basis_set(self.accepting, "accepting")

    def _check_basis_set(self, states, what):
        bad = sorted(q for q in states if not 0 <= q < self.dimension)
        if bad:
            raise InvalidMachine(f"{what} basis states {bad} outside 0..{self.dimension - 1}")

    def final_state(self, word: str) -> np.ndarray:
        """U_$ U_wn ... U_w1 U_¢ |0>."""
        vec = np.zeros(self.dimension, dtype=complex)
        vec[0] = 1.0
        vec = self.unitaries[LEFT_END] @ vec
        for symbol in word:
            u = self.unitaries.get(symbol)
            if u is None or symbol in (LEFT_END, RIGHT_END):
                raise UnknownSymbol(symbol, self.alphabet)
            vec = u @ vec
        return self.unitaries[RIGHT_END] @ vec


@dataclass(frozen=True, eq=False)
class PvMo1Qfa(Mo1Qfa):
    rejecting: frozenset[int] = frozenset()

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(self, "rejecting", frozenset(int(q) for q in self.rejecting))
        self._check_basis_set(self.rejecting, "rejecting")
        both = sorted(self.accepting & self.rejecting)
        if both:
            raise InvalidMachine(f"basis states {both} are both accepting and rejecting")


def _mass(vec: np.ndarray, states) -> float:
    return float(sum(abs(vec[q]) ** 2 for q in states))


def _clamp(p: float) -> float:
    return min(max(p, 0.0), 1.0)


def mo1qfa_accept_prob(m: Mo1Qfa, word: str) -> float:
    return _clamp(_mass(m.final_state(word), m.accepting))


def pvmo1qfa_probs(m: PvMo1Qfa, word: str) -> tuple[float, float]:
    vec = m.final_state(word)
    return _clamp(_mass(vec, m.accepting)), _clamp(_mass(vec, m.rejecting))


# -- builders for the explicit machines -------------------------------------------


def ml_parameters(l: int) -> tuple[float, float, float]:
    """(p, alpha, beta) with p = cos(l·√2π); needs p <= 0 for a real alpha."""
    if not isinstance(l, int) or l < 1:
        raise InvalidParameter(f"l must be a positive integer, got {l!r}")
    p = math.cos(l * SQRT2_PI)
    if p > 0:
        raise InvalidParameter(f"cos(l*sqrt(2)*pi) = {p:.6g} > 0 for l={l}; alpha would be imaginary")
    return p, math.sqrt(-p / (1 - p)), math.sqrt(1 / (1 - p))


def build_Ml(l: int) -> PvMo1Qfa:
    """Three-state pvMO-1QFA separating #a = #b from #b = #a + l exactly."""
    _, alpha, beta = ml_parameters(l)
    c, s = math.cos(SQRT2_PI), math.sin(SQRT2_PI)
    u_left = np.array([[alpha, -beta, 0], [beta, alpha, 0], [0, 0, 1]], dtype=complex)
    u_a = np.array([[1, 0, 0], [0, c, s], [0, -s, c]], dtype=complex)
    u_b = np.array([[1, 0, 0], [0, c, -s], [0, s, c]], dtype=complex)
    return PvMo1Qfa(
        3,
        ("a", "b"),
        {LEFT_END: u_left, "a": u_a, "b": u_b, RIGHT_END: np.linalg.inv(u_left)},
        frozenset({0}),
        frozenset({1, 2}),
    )


def ap_min_period(eps: float) -> float:
    """Smallest admissible p for error eps: π / arccos(√(1-eps))."""
    if not 0 < eps < 0.5:
        raise InvalidParameter(f"eps must lie in (0, 1/2), got {eps}")
    return math.pi / math.acos(math.sqrt(1 - eps))


def _ap_machine(p: int) -> Mo1Qfa:
    return Mo1Qfa(2, ("a",), {"a": rotation(math.pi / p)}, frozenset({0}))


def build_Ap(p: int) -> Mo1Qfa:
    """Two-state MO-1QFA rotating by π/p per symbol; accepts a^k w.p. cos²(kπ/p)."""
    if not isinstance(p, int) or p < 6:
        raise InvalidParameter(f"p must be an integer >= 6, got {p!r}")
    return _ap_machine(p)


def build_Ap_eps(p: int, eps: float) -> Mo1Qfa:
    bound = ap_min_period(eps)
    if not isinstance(p, int) or p < bound:
        raise InvalidParameter(f"p = {p!r} < pi/arccos(sqrt(1-eps)) = {bound:.6g}")
    return _ap_machine(p)


# -- 1QCFA ----------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Qcfa1:
    """One-way automaton with a quantum register and classical control.

    ``theta[(s, sym)]`` is the unitary applied in non-halting state ``s`` on
    tape symbol ``sym`` (identity if absent).  ``measurements[(s, sym)]`` is a
    list of orthogonal projectors; if absent the measurement is trivial and
    yields outcome 0.  ``transitions[(s, sym, outcome)]`` is the next
    classical state.  A branch halts as soon as it enters S_a or S_r.
    """

    dimension: int
    alphabet: tuple[str, ...]
    num_classical: int
    initial: int
    accepting: frozenset[int]
    rejecting: frozenset[int]
    theta: dict
    measurements: dict
    transitions: dict
    quantum_initial: int = 0
    _proj: dict = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", _check_alphabet(self.alphabet))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        object.__setattr__(self, "rejecting", frozenset(self.rejecting))
        d, n = self.dimension, self.num_classical
        if self.accepting & self.rejecting:
            raise InvalidMachine("S_a and S_r must be disjoint")
        for s in (self.initial, *self.accepting, *self.rejecting):
            if not 0 <= s < n:
                raise InvalidMachine(f"classical state {s} outside 0..{n - 1}")
        if not 0 <= self.quantum_initial < d:
            raise InvalidMachine(f"initial basis state {self.quantum_initial} outside 0..{d - 1}")
        tape = self.alphabet + (LEFT_END, RIGHT_END)
        theta = {}
        for key, u in self.theta.items():
            u = np.array(u, dtype=complex)
            if u.shape != (d, d) or not check_unitary(u):
                raise InvalidMachine(f"Theta{key} is not a {d}x{d} unitary")
            theta[tuple(key)] = u
        proj = {}
        for key, ps in self.measurements.items():
            ps = [np.array(p, dtype=complex) for p in ps]
            _check_measurement(ps, d, key)
            proj[tuple(key)] = ps
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "_proj", proj)
        halting = self.accepting | self.rejecting
        trans = {tuple(k): int(v) for k, v in self.transitions.items()}
        for s in range(n):
            if s in halting:
                continue
            for sym in tape:
                outcomes = len(proj.get((s, sym), [None]))
                for c in range(outcomes):
                    t = trans.get((s, sym, c))
                    if t is None:
                        raise InvalidMachine(f"classical transition ({s}, {sym!r}, {c}) undefined")
                    if not 0 <= t < n:
                        raise InvalidMachine(f"transition ({s}, {sym!r}, {c}) -> {t} out of range")
        object.__setattr__(self, "transitions", trans)

    @property
    def halting(self) -> frozenset[int]:
        return self.accepting | self.rejecting

    def projectors(self, state: int, symbol: str):
        return self._proj.get((state, symbol))


def _check_measurement(ps, d, key):
    total = np.zeros((d, d), dtype=complex)
    for i, p in enumerate(ps):
        if p.shape != (d, d):
            raise InvalidMachine(f"projector {i} of Delta{key} has shape {p.shape}")
        if np.linalg.norm(p @ p - p) > PROJECTOR_TOL or np.linalg.norm(p - p.conj().T) > PROJECTOR_TOL:
            raise InvalidMachine(f"Delta{key}[{i}] is not an orthogonal projector")
        for j in range(i):
            if np.linalg.norm(p @ ps[j]) > PROJECTOR_TOL:
                raise InvalidMachine(f"Delta{key}[{i}] and [{j}] are not orthogonal")
        total = total + p
    if np.linalg.norm(total - np.eye(d)) > PROJECTOR_TOL:
        raise InvalidMachine(f"projectors of Delta{key} do not sum to I")


def _tape(m: Qcfa1, word: str) -> list[str]:
    for symbol in word:
        if symbol not in m.alphabet:
            raise UnknownSymbol(symbol, m.alphabet)
    return [LEFT_END, *word, RIGHT_END]


def _explore(m: Qcfa1, word: str):
    """Enumerate the outcome tree with unnormalized branch vectors.

    Returns (p_accept, p_reject, number of halted branches).
    """
    vec = np.zeros(m.dimension, dtype=complex)
    vec[m.quantum_initial] = 1.0
    if m.initial in m.halting:
        return (1.0, 0.0, 1) if m.initial in m.accepting else (0.0, 1.0, 1)
    branches = [(m.initial, vec)]
    p_acc = p_rej = 0.0
    leaves = 0
    for symbol in _tape(m, word):
        nxt = []
        for s, v in branches:
            u = m.theta.get((s, symbol))
            if u is not None:
                v = u @ v
            projectors = m.projectors(s, symbol)
            outcomes = [v] if projectors is None else [p @ v for p in projectors]
            for c, branch in enumerate(outcomes):
                weight = float(np.vdot(branch, branch).real)
                if weight <= 1e-300:
                    continue
                t = m.transitions[(s, symbol, c)]
                if t in m.accepting:
                    p_acc += weight
                    leaves += 1
                elif t in m.rejecting:
                    p_rej += weight
                    leaves += 1
                else:
                    nxt.append((t, branch))
        branches = nxt
    if branches:
        raise NonTerminating(
            f"{len(branches)} branch(es) ended the tape in non-halting states "
            f"{sorted({s for s, _ in branches})}"
        )
    return p_acc, p_rej, leaves


def qcfa_exact_probs(m: Qcfa1, word: str) -> tuple[float, float]:
    p_acc, p_rej, _ = _explore(m, word)
    return _clamp(p_acc), _clamp(p_rej)


def qcfa_branch_count(m: Qcfa1, word: str) -> int:
    """Number of halted branches with nonzero weight in the outcome tree."""
    return _explore(m, word)[2]


def qcfa_sample(m: Qcfa1, word: str, seed: int) -> Verdict:
    """One stochastic run with a numpy Generator seeded by ``seed``."""
    rng = np.random.default_rng(seed)
    s = m.initial
    v = np.zeros(m.dimension, dtype=complex)
    v[m.quantum_initial] = 1.0
    for symbol in _tape(m, word):
        if s in m.halting:
            break
        u = m.theta.get((s, symbol))
        if u is not None:
            v = u @ v
        projectors = m.projectors(s, symbol)
        c = 0
        if projectors is not None:
            branches = [p @ v for p in projectors]
            weights = np.array([np.vdot(b, b).real for b in branches])
            c = int(rng.choice(len(branches), p=weights / weights.sum()))
            v = branches[c] / math.sqrt(weights[c])
        s = m.transitions[(s, symbol, c)]
    if s in m.accepting:
        return Verdict.ACCEPT
    if s in m.rejecting:
        return Verdict.REJECT
    raise NonTerminating(f"run ended in non-halting classical state {s}")


def qcfa_sample_many(m: Qcfa1, word: str, n: int, seed: int) -> list[Verdict]:
    """``n`` independent runs; sample ``i`` uses seed ``seed + i``."""
    return [qcfa_sample(m, word, seed + i) for i in range(n)]


POLYEQ_RUNNING, POLYEQ_ACCEPT, POLYEQ_REJECT = 0, 1, 2


def polyeq_T(n: int, m: int, eps: float) -> int:
    """Required block count ⌈2 l² ln(1/eps)⌉ with l = max(n, m)."""
    if not 0 < eps <= 1 / 3:
        raise InvalidParameter(f"eps must lie in (0, 1/3], got {eps}")
    l = max(n, m)
    return math.ceil(2 * l * l * math.log(1 / eps))


def build_polyeq_qcfa(eps: float = 1 / 3) -> Qcfa1:
    """Two-dimensional 1QCFA: rotate on a/b, measure at '#', reject on |1>.

    The machine itself is independent of ``eps``; ``eps`` only fixes the
    promise (see :func:`polyeq_T`) and is validated here.
    """
    if not 0 < eps <= 1 / 3:
        raise InvalidParameter(f"eps must lie in (0, 1/3], got {eps}")
    c, s = math.cos(SQRT2_PI), math.sin(SQRT2_PI)
    u_a = np.array([[c, s], [-s, c]], dtype=complex)
    u_b = np.array([[c, -s], [s, c]], dtype=complex)
    p0 = np.diag([1, 0]).astype(complex)
    p1 = np.diag([0, 1]).astype(complex)
    run = POLYEQ_RUNNING
    return Qcfa1(
        dimension=2,
        alphabet=("#", "a", "b"),
        num_classical=3,
        initial=run,
        accepting=frozenset({POLYEQ_ACCEPT}),
        rejecting=frozenset({POLYEQ_REJECT}),
        theta={(run, "a"): u_a, (run, "b"): u_b},
        measurements={(run, "#"): [p0, p1]},
        transitions={
            (run, LEFT_END, 0): run,
            (run, "a", 0): run,
            (run, "b", 0): run,
            (run, "#", 0): run,
            (run, "#", 1): POLYEQ_REJECT,
            (run, RIGHT_END, 0): POLYEQ_ACCEPT,
        },
    )
