import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from promise_fa import classical as ca
from promise_fa.classical import Dfa, Pfa, PvDfa, Verdict
from promise_fa.complexity import theorem10_pvdfa
from promise_fa.decision import pvdfa_equivalent
from promise_fa.errors import InvalidMachine, OverlappingComponents, UnionUndefined, UnknownSymbol, WordTooShort
from promise_fa.generators import random_pvdfa
from promise_fa.problems import all_words

A, R, N = Verdict.ACCEPT, Verdict.REJECT, Verdict.NEUTRAL


@st.composite
def pvdfas(draw, max_states=4, alphabet=("a", "b")):
    n = draw(st.integers(1, max_states))
    delta = [[draw(st.integers(0, n - 1)) for _ in alphabet] for _ in range(n)]
    labels = [draw(st.sampled_from("arn")) for _ in range(n)]
    return PvDfa(
        alphabet,
        delta,
        0,
        {s for s, c in enumerate(labels) if c == "a"},
        {s for s, c in enumerate(labels) if c == "r"},
    )


words_ab = st.text(alphabet="ab", max_size=12)


# -- run / classify ---------------------------------------------------------------


def test_parity_run():
    parity = ca.cycle_dfa(2, {0})
    assert ca.run(parity, "aa") == 0
    assert ca.run(parity, "") == parity.initial


def test_theorem10_run_and_classify():
    m = theorem10_pvdfa(5, 2)
    assert ca.run(m, "aaaaaaa") == 2
    assert ca.classify(m, "aaaaa") is A
    assert ca.classify(m, "aa") is R
    assert ca.classify(m, "a") is N


def test_unknown_symbol():
    with pytest.raises(UnknownSymbol):
        ca.run(ca.cycle_dfa(3, {0}), "ab")


def test_invalid_tables_rejected():
    with pytest.raises(InvalidMachine):
        Dfa(("a",), [[1]], 0, ())
    with pytest.raises(InvalidMachine):
        PvDfa(("a",), [[0]], 0, {0}, {0})


# -- complement ------------------------------------------------------------------


def test_complement_theorem10():
    m = theorem10_pvdfa(5, 2)
    assert ca.classify(ca.complement(m), "aaaaa") is R
    assert ca.complement(ca.complement(m)) == m


def test_complement_of_total_dfa_flips_everything():
    m = ca.as_pvdfa(ca.cycle_dfa(3, {1}))
    for w in all_words("a", 9):
        assert ca.complement(m).classify(w) is m.classify(w).flipped()
        assert m.classify(w) is not N


@given(pvdfas(), words_ab)
def test_complement_flips_verdicts(m, w):
    assert ca.complement(m).classify(w) is m.classify(w).flipped()
    assert ca.complement(ca.complement(m)) == m


# -- components ------------------------------------------------------------------


@given(pvdfas(), words_ab)
def test_components_match_classify(m, w):
    yes, no = ca.component_dfas(m)
    assert yes.accepts(w) == (m.classify(w) is A)
    assert no.accepts(w) == (m.classify(w) is R)


def test_components_theorem10():
    yes, no = ca.component_dfas(theorem10_pvdfa(5, 2))
    assert ca.dfa_equivalent(yes, ca.cycle_dfa(5, {0}))
    assert ca.dfa_equivalent(no, ca.cycle_dfa(5, {2}))
    _, empty = ca.component_dfas(ca.cycle_pvdfa(3, {0}, ()))
    assert ca.shortest_accepted(empty) is None


def test_recognizer_from_components_examples():
    m = ca.recognizer_from_components(ca.cycle_dfa(5, {0}), ca.cycle_dfa(5, {2}))
    assert [m.classify(w) for w in ("aaaaa", "aa", "a")] == [A, R, N]
    everything = ca.recognizer_from_components(ca.cycle_dfa(1, ()), ca.cycle_dfa(1, {0}))
    assert all(everything.classify(w) is R for w in all_words("a", 6))


def test_recognizer_overlap_carries_witness():
    with pytest.raises(OverlappingComponents) as info:
        ca.recognizer_from_components(ca.cycle_dfa(2, {0}), ca.cycle_dfa(3, {0}))
    assert info.value.witness == ""
    with pytest.raises(OverlappingComponents) as info:
        ca.recognizer_from_components(ca.cycle_dfa(2, {1}), ca.cycle_dfa(3, {0}))
    assert info.value.witness == "aaa"


@settings(max_examples=50)
@given(pvdfas())
def test_component_round_trip(m):
    yes, no = ca.component_dfas(m)
    back = ca.recognizer_from_components(yes, no)
    assert pvdfa_equivalent(ca.minimize_pvdfa(back), ca.minimize_pvdfa(m))


# -- products --------------------------------------------------------------------


def _set_intersection(va, vb):
    if va is A and vb is A:
        return A
    if va is R and vb is R:
        return R
    return N


def _set_union(va, vb):
    if A in (va, vb):
        return A
    if R in (va, vb):
        return R
    return N


@settings(max_examples=60)
@given(pvdfas(), pvdfas())
def test_intersection_matches_set_semantics(a, b):
    prod = ca.intersect_recognizers(a, b)
    for w in all_words("ab", 8):
        assert prod.classify(w) is _set_intersection(a.classify(w), b.classify(w))


@settings(max_examples=60)
@given(pvdfas(), pvdfas())
def test_union_matches_set_semantics_or_raises(a, b):
    clash = next(
        (w for w in all_words("ab", 8) if {a.classify(w), b.classify(w)} == {A, R}),
        None,
    )
    try:
        prod = ca.union_recognizers(a, b)
    except UnionUndefined as exc:
        assert {a.classify(exc.witness), b.classify(exc.witness)} == {A, R}
        if clash is not None:
            assert len(exc.witness) <= len(clash)
        return
    assert clash is None
    for w in all_words("ab", 8):
        assert prod.classify(w) is _set_union(a.classify(w), b.classify(w))


def test_intersection_examples():
    m2, m3 = theorem10_pvdfa(2, 1), theorem10_pvdfa(3, 1)
    prod = ca.intersect_recognizers(m2, m3)
    for k in range(13):
        expected = A if k % 6 == 0 else R if k % 2 == 1 and k % 3 == 1 else N
        assert prod.classify("a" * k) is expected
    m = theorem10_pvdfa(5, 2)
    assert pvdfa_equivalent(ca.intersect_recognizers(m, m), m)
    both = ca.intersect_recognizers(m, ca.complement(m))
    assert all(both.classify(w) is N for w in all_words("a", 12))


def test_union_examples():
    m = theorem10_pvdfa(5, 2)
    nothing = ca.cycle_pvdfa(1, (), ())
    assert pvdfa_equivalent(ca.union_recognizers(m, nothing), m)
    with pytest.raises(UnionUndefined) as info:
        ca.union_recognizers(m, ca.complement(m))
    assert info.value.witness == ""  # "" is accepted by m and rejected by its complement


def test_lift_routes_new_symbols_to_neutral_sink():
    m = ca.lift(theorem10_pvdfa(3, 1), ("a", "b"))
    assert m.classify("aaa") is A
    assert m.classify("ab") is N
    assert m.classify("baaa") is N


# -- pumping -----------------------------------------------------------------------


def test_pump_examples():
    assert ca.pump_decompose(ca.cycle_pvdfa(3, {0}, ()), "aaaa") == ("", "aaa", "a")
    assert ca.pump_decompose(ca.cycle_pvdfa(1, {0}, ()), "a") == ("", "a", "")
    with pytest.raises(WordTooShort):
        ca.pump_decompose(ca.cycle_pvdfa(3, {0}, ()), "aa")


def test_pumped_theorem10_yes_word_never_rejected():
    m = theorem10_pvdfa(5, 2)
    x, y, z = ca.pump_decompose(m, "aaaaa")
    assert all(m.classify(x + y * t + z) in (A, N) for t in range(6))


@given(pvdfas(), st.text(alphabet="ab", min_size=4, max_size=14))
def test_pump_conditions(m, w):
    x, y, z = ca.pump_decompose(m, w)
    assert x + y + z == w and len(x + y) <= m.num_states and y
    assert m.run(x) == m.run(x + y)
    for t in range(6):
        assert m.classify(x + y * t + z) is m.classify(w)


# -- inclusion and minimization ------------------------------------------------------


def test_inclusion_examples():
    four, two = ca.cycle_dfa(4, {0}), ca.cycle_dfa(2, {0})
    assert ca.dfa_language_included(four, two)
    r = ca.dfa_language_included(two, four)
    assert not r and r.witness == "aa"
    assert ca.dfa_language_included(two, two)


def test_minimize_examples():
    assert ca.minimize_dfa(ca.cycle_dfa(6, {0})).num_states == 6
    with_junk = Dfa(("a",), [[1], [0], [2]], 0, {0})
    assert ca.minimize_dfa(with_junk).num_states == 2
    twins = PvDfa(("a",), [[1], [2], [2]], 0, (), {1, 2})  # states 1, 2: same label, same successor
    assert ca.minimize_pvdfa(twins).num_states == 2
    assert ca.minimize_pvdfa(PvDfa(("a",), [[1], [1]], 0, (), ())).num_states == 1


@settings(max_examples=60)
@given(pvdfas())
def test_minimize_pvdfa_preserves_problem(m):
    small = ca.minimize_pvdfa(m)
    assert small.num_states <= m.num_states
    assert pvdfa_equivalent(small, m)
    assert ca.minimize_pvdfa(small) == small
    for w in all_words("ab", 7):
        assert small.classify(w) is m.classify(w)


def test_minimization_is_canonical_under_relabeling():
    rng = random.Random(5)
    from promise_fa.generators import permute_states

    for _ in range(20):
        m = random_pvdfa(rng, 5)
        assert ca.minimize_pvdfa(permute_states(m, rng)) == ca.minimize_pvdfa(m)


# -- PFA --------------------------------------------------------------------------------


def test_pfa_from_dfa_agrees():
    dfa = ca.cycle_dfa(3, {1})
    pfa = Pfa.from_dfa(dfa)
    for w in all_words("a", 8):
        assert ca.pfa_accept_prob(pfa, w) == int(dfa.accepts(w))


def test_pfa_uniform_is_one_half():
    h = Fraction(1, 2)
    pfa = Pfa(("a", "b"), [[[h, h], [h, h]], [[0, 1], [1, 0]]], [h, h], {0})
    assert ca.pfa_accept_prob(pfa, "") == h
    assert all(ca.pfa_accept_prob(pfa, w) == h for w in all_words("ab", 6))


def test_pfa_validation_and_float_mode():
    with pytest.raises(InvalidMachine):
        Pfa(("a",), [[[Fraction(1, 2), Fraction(1, 3)], [0, 1]]], [1, 0], {0})
    pfa = Pfa(("a",), [[[0.25, 0.75], [0.5, 0.5]]], [1.0, 0.0], {0}, exact=False)
    assert ca.pfa_accept_prob(pfa, "aa") == pytest.approx(0.25 * 0.25 + 0.75 * 0.5)
    with pytest.raises(UnknownSymbol):
        ca.pfa_accept_prob(pfa, "b")


@given(st.lists(st.integers(1, 5), min_size=4, max_size=4), st.text(alphabet="a", max_size=10))
def test_pfa_probability_in_unit_interval(weights, w):
    row0 = [Fraction(weights[0], weights[0] + weights[1]), Fraction(weights[1], weights[0] + weights[1])]
    row1 = [Fraction(weights[2], weights[2] + weights[3]), Fraction(weights[3], weights[2] + weights[3])]
    pfa = Pfa(("a",), [[row0, row1]], [1, 0], {1})
    assert 0 <= ca.pfa_accept_prob(pfa, w) <= 1


def test_shortest_witness_is_length_lex():
    # words ending in "b": shortest accepted is "b", found before longer words
    ends_b = Dfa(("a", "b"), [[0, 1], [0, 1]], 0, {1})
    assert ca.shortest_accepted(ends_b) == "b"
    has_ba = Dfa(("a", "b"), [[0, 1], [2, 1], [2, 2]], 0, {2})
    assert ca.shortest_accepted(has_ba) == "ba"
