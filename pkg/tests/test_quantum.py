import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from promise_fa import quantum as qa
from promise_fa.classical import Verdict
from promise_fa.errors import InvalidMachine, InvalidParameter, NonSquare, NonTerminating, UnknownSymbol
from promise_fa.problems import all_words

THETA = math.sqrt(2) * math.pi


def ml_accept_oracle(word: str, l: int) -> float:
    """Closed form for the accept probability of the three-dimensional machine.

    The first amplitude after U_$ is (cos(d*theta) - cos(l*theta)) / (1 - cos(l*theta))
    with d = #b - #a; everything else lands in the rejecting span.
    """
    d = word.count("b") - word.count("a")
    c = math.cos(l * THETA)
    return ((math.cos(d * THETA) - c) / (1 - c)) ** 2


# -- unitarity ---------------------------------------------------------------------


def test_check_unitary():
    assert qa.check_unitary(np.eye(3))
    assert not qa.check_unitary(np.diag([1, 2]))
    with pytest.raises(NonSquare):
        qa.check_unitary(np.ones((2, 3)))
    assert qa.check_unitary(qa.build_Ml(1).unitaries[qa.LEFT_END])


def test_non_unitary_machine_rejected():
    with pytest.raises(InvalidMachine):
        qa.Mo1Qfa(2, ("a",), {"a": np.diag([1, 2])}, {0})
    with pytest.raises(InvalidMachine):
        qa.PvMo1Qfa(2, ("a",), {}, {0}, {0})


# -- the three-dimensional machine ---------------------------------------------------


def test_ml_parameters_frozen():
    p, alpha, beta = qa.ml_parameters(1)
    assert p == pytest.approx(-0.26625534204141565, abs=1e-12)
    assert alpha == pytest.approx(0.4585519237219756, abs=1e-12)
    assert beta == pytest.approx(0.8886676168573239, abs=1e-12)


@pytest.mark.parametrize("l", [1, 2])
def test_ml_structure(l):
    m = qa.build_Ml(l)
    u = m.unitaries
    assert np.linalg.norm(u["a"] @ u["b"] - np.eye(3)) < 1e-12
    assert np.linalg.norm(u["b"] @ u["a"] - np.eye(3)) < 1e-12
    assert np.linalg.norm(u[qa.RIGHT_END] @ u[qa.LEFT_END] - np.eye(3)) < 1e-12
    assert m.accepting == frozenset({0}) and m.rejecting == frozenset({1, 2})


def test_ml_precondition():
    assert math.cos(3 * THETA) > 0
    with pytest.raises(InvalidParameter):
        qa.build_Ml(3)
    with pytest.raises(InvalidParameter):
        qa.build_Ml(0)


def test_ml_examples():
    m = qa.build_Ml(1)
    acc, rej = qa.pvmo1qfa_probs(m, "ab")
    assert acc == pytest.approx(1, abs=1e-9) and rej == pytest.approx(0, abs=1e-9)
    acc, rej = qa.pvmo1qfa_probs(m, "abb")
    assert acc == pytest.approx(0, abs=1e-9) and rej == pytest.approx(1, abs=1e-9)
    acc, rej = qa.pvmo1qfa_probs(m, "abbb")
    assert acc == pytest.approx(0.2185462604967023, abs=1e-9)
    assert max(acc, rej) < 1 - 1e-6


@pytest.mark.parametrize("l", [1, 2])
def test_ml_matches_closed_form(l):
    m = qa.build_Ml(l)
    for w in all_words("ab", 9):
        acc, rej = qa.pvmo1qfa_probs(m, w)
        assert acc == pytest.approx(ml_accept_oracle(w, l), abs=1e-9)
        assert acc + rej == pytest.approx(1, abs=1e-9)


def test_ml_rejects_mirror_words_with_certainty():
    # cos is even, so #a = #b + l gives the same amplitude as #b = #a + l
    m = qa.build_Ml(1)
    assert qa.pvmo1qfa_probs(m, "a")[1] == pytest.approx(1, abs=1e-9)
    assert qa.pvmo1qfa_probs(m, "aab")[1] == pytest.approx(1, abs=1e-9)


@settings(max_examples=100)
@given(st.text(alphabet="ab", max_size=20))
def test_norm_preserved(w):
    v = qa.build_Ml(1).final_state(w)
    assert np.linalg.norm(v) == pytest.approx(1, abs=1e-9)


def test_unknown_symbol_and_end_markers():
    m = qa.build_Ml(1)
    with pytest.raises(UnknownSymbol):
        qa.pvmo1qfa_probs(m, "abc")
    with pytest.raises(UnknownSymbol):
        qa.pvmo1qfa_probs(m, "$")


# -- the two-dimensional rotation machines ---------------------------------------------


def test_ap_examples():
    m = qa.build_Ap(7)
    assert qa.mo1qfa_accept_prob(m, "a" * 7) == pytest.approx(1, abs=1e-9)
    assert qa.mo1qfa_accept_prob(m, "") == pytest.approx(1, abs=1e-12)
    assert qa.mo1qfa_accept_prob(m, "aaa") == pytest.approx(0.049515566048790455, abs=1e-9)
    for i in range(3):
        assert qa.mo1qfa_accept_prob(m, "a" * (7 * i + 1)) == pytest.approx(0.8117449009293668, abs=1e-9)


@pytest.mark.parametrize("p", [6, 7, 11, 13])
def test_ap_formula(p):
    m = qa.build_Ap(p)
    for k in range(4 * p + 1):
        assert qa.mo1qfa_accept_prob(m, "a" * k) == pytest.approx(math.cos(k * math.pi / p) ** 2, abs=1e-9)


def test_ap_preconditions():
    with pytest.raises(InvalidParameter):
        qa.build_Ap(5)
    assert qa.ap_min_period(0.1) == pytest.approx(9.764062907307233)
    qa.build_Ap_eps(10, 0.1)
    with pytest.raises(InvalidParameter):
        qa.build_Ap_eps(9, 0.1)


def test_identity_machine_always_accepts():
    m = qa.Mo1Qfa(2, ("a", "b"), {}, {0})
    assert all(qa.mo1qfa_accept_prob(m, w) == 1 for w in all_words("ab", 4))


# -- 1QCFA --------------------------------------------------------------------------


def polyeq_accept_oracle(n, m, t):
    return math.cos((n - m) * THETA) ** (2 * t)


def test_polyeq_T():
    assert qa.polyeq_T(1, 2, 1 / 3) == 9
    assert qa.polyeq_T(1, 1, 1 / 3) == 3
    assert qa.polyeq_T(0, 0, 1 / 3) == 0
    with pytest.raises(InvalidParameter):
        qa.polyeq_T(1, 2, 0.5)


def test_polyeq_examples():
    m = qa.build_polyeq_qcfa(1 / 3)
    assert qa.qcfa_exact_probs(m, "ab#" * 9) == pytest.approx((1, 0), abs=1e-9)
    assert qa.qcfa_exact_probs(m, "ab#" * 3) == pytest.approx((1, 0), abs=1e-9)
    acc, rej = qa.qcfa_exact_probs(m, "abb#" * 9)
    assert rej == pytest.approx(0.999999999954776, abs=1e-9)
    assert rej >= 2 / 3
    assert math.cos(THETA) ** 2 == pytest.approx(0.07089190716559124, abs=1e-12)


@pytest.mark.parametrize("n,k,t", [(0, 1, 1), (1, 3, 4), (2, 0, 5), (3, 4, 2), (4, 1, 3)])
def test_polyeq_matches_closed_form(n, k, t):
    m = qa.build_polyeq_qcfa()
    acc, rej = qa.qcfa_exact_probs(m, ("a" * n + "b" * k + "#") * t)
    assert acc == pytest.approx(polyeq_accept_oracle(n, k, t), abs=1e-9)
    assert acc + rej == pytest.approx(1, abs=1e-9)


@pytest.mark.parametrize("t", [1, 3, 9])
def test_polyeq_branch_count(t):
    assert qa.qcfa_branch_count(qa.build_polyeq_qcfa(), "abb#" * t) <= t + 1


def test_polyeq_rejects_bad_eps():
    with pytest.raises(InvalidParameter):
        qa.build_polyeq_qcfa(0.5)


def test_sampling_yes_instance_always_accepts():
    m = qa.build_polyeq_qcfa()
    assert all(v is Verdict.ACCEPT for v in qa.qcfa_sample_many(m, "aabb#" * 9, 200, seed=1))


def test_sampling_is_reproducible():
    m = qa.build_polyeq_qcfa()
    assert qa.qcfa_sample_many(m, "abb#", 50, seed=42) == qa.qcfa_sample_many(m, "abb#", 50, seed=42)
    assert qa.qcfa_sample(m, "abb#", 3) == qa.qcfa_sample_many(m, "abb#", 4, seed=0)[3]


@pytest.mark.parametrize("word", ["abb#" * 9, "abb#", "aab#ab#"])
def test_sampling_within_binomial_band(word):
    m = qa.build_polyeq_qcfa()
    n = 10_000
    _, p_rej = qa.qcfa_exact_probs(m, word)
    rejected = sum(v is Verdict.REJECT for v in qa.qcfa_sample_many(m, word, n, seed=2024))
    sigma = math.sqrt(n * p_rej * (1 - p_rej))
    assert abs(rejected - n * p_rej) <= 3 * sigma + 1


def test_qcfa_validation():
    p0, p1 = np.diag([1, 0]), np.diag([0, 1])
    base = dict(dimension=2, alphabet=("a",), num_classical=2, initial=0,
                accepting={1}, rejecting=set(), theta={})
    with pytest.raises(InvalidMachine):  # projectors do not sum to I
        qa.Qcfa1(**base, measurements={(0, "a"): [p0]}, transitions={})
    with pytest.raises(InvalidMachine):  # transition for outcome 1 missing
        qa.Qcfa1(**base, measurements={(0, "a"): [p0, p1]},
                 transitions={(0, qa.LEFT_END, 0): 0, (0, "a", 0): 0, (0, qa.RIGHT_END, 0): 1})
    never_halts = qa.Qcfa1(**base, measurements={},
                           transitions={(0, qa.LEFT_END, 0): 0, (0, "a", 0): 0, (0, qa.RIGHT_END, 0): 0})
    with pytest.raises(NonTerminating):
        qa.qcfa_exact_probs(never_halts, "a")
