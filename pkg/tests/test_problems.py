import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from promise_fa import classical as ca
from promise_fa import problems as pp
from promise_fa.errors import BeyondEnumerationBound, InvalidParameter, OverlappingComponents, UnionUndefined
from promise_fa.problems import Membership

Y, NO, OUT = Membership.YES, Membership.NO, Membership.OUTSIDE


def test_all_words_length_lex():
    assert list(pp.all_words("ab", 2)) == ["", "a", "b", "aa", "ab", "ba", "bb"]
    assert len(list(pp.all_words("ab", 10))) == 2 ** 11 - 1


@pytest.mark.parametrize(
    "text,word",
    [("a3", "aaa"), ("(ab2#)3", "abb#abb#abb#"), ("-", ""), ("ab", "ab"), ("(a(b)2)2", "abbabb")],
)
def test_expand_word(text, word):
    assert pp.expand_word(text) == word


def test_anl_examples():
    p = pp.make_ANl(5, 2)
    assert p.classify_word("aaaaa") is Y
    assert p.classify_word("aa") is NO
    assert p.classify_word("a") is OUT
    q = pp.make_ANl(4, 1)
    assert q.classify_word("a" * 4) is Y and q.classify_word("a" * 5) is NO
    with pytest.raises(InvalidParameter):
        pp.make_ANl(5, 5)


def test_c_examples():
    c = pp.make_C()
    assert c.classify_word("aabb") is Y
    assert c.classify_word("aab") is NO
    assert c.classify_word("aba") is OUT
    assert c.classify_word("") is Y
    with pytest.raises(BeyondEnumerationBound):
        c.classify_word("a" * 17)


def test_ap_examples():
    p = pp.make_Ap(7)
    assert p.classify_word("") is Y
    assert p.classify_word("aaa") is NO
    assert p.classify_word("aa") is OUT
    assert sorted(p.dfa_yes.accepting) == [0, 1, 6]
    with pytest.raises(InvalidParameter):
        pp.make_Ap(5)


@pytest.mark.parametrize("p", range(6, 30))
def test_ap_components_nonempty(p):
    prob = pp.make_Ap(p)
    assert prob.classify_word("") is Y
    assert prob.classify_word("a" * math.ceil(p / 2)) is NO


def test_ap_eps_thresholds():
    p = pp.make_Ap_eps(10, 0.1)
    for k in range(20):
        c2 = math.cos(k * math.pi / 10) ** 2
        expected = Y if c2 >= 0.9 else NO if c2 <= 0.1 else OUT
        assert p.classify_word("a" * k) is expected


def test_polyeq_examples():
    p = pp.make_PloyEQ(1 / 3)
    assert p.classify_word(pp.expand_word("(ab#)9")) is Y
    assert p.classify_word(pp.expand_word("(ab2#)9")) is NO
    assert p.classify_word(pp.expand_word("(ab2#)8")) is OUT
    assert p.classify_word("") is OUT
    assert p.classify_word("ab#abb#") is OUT
    assert p.classify_word("#") is Y  # n = m = 0 needs no blocks beyond the first


def test_al_bl():
    a = pp.make_Al(1)
    assert a.classify_word("abab") is Y
    assert a.classify_word("bab") is NO
    assert a.classify_word("a") is OUT
    b = pp.make_Bl(2)
    assert b.classify_word("aabb") is Y
    assert b.classify_word("abbb") is NO
    assert b.classify_word("bbab") is OUT


@pytest.mark.parametrize(
    "problem",
    [pp.make_ANl(5, 2), pp.make_ANr1r2(7, 1, 3), pp.make_appendix(4, 6), pp.make_Ap(11), pp.make_Ap_eps(10, 0.1)],
    ids=lambda p: p.name,
)
def test_regular_families_disjoint(problem):
    both = ca.dfa_intersection(problem.dfa_yes, problem.dfa_no)
    assert ca.shortest_accepted(both) is None
    for w in pp.all_words(problem.alphabet, 20):
        m = problem.classify_word(w)
        assert (m is Y) == problem.dfa_yes.accepts(w)
        assert (m is NO) == problem.dfa_no.accepts(w)


def test_predicate_families_disjoint():
    for problem in (pp.make_Al(2, bound=12), pp.make_Bl(1, bound=20), pp.make_C(bound=20), pp.make_odd_anbn(20)):
        for w in problem.promise_words(problem.bound):
            assert not (problem.yes(w) and problem.no(w))


def test_overlapping_regular_problem_rejected():
    with pytest.raises(OverlappingComponents):
        pp.RegularProblem(ca.cycle_dfa(2, {0}), ca.cycle_dfa(4, {0}))


# -- set operations and order --------------------------------------------------------


@given(st.text(alphabet="a", max_size=10))
def test_complement_involution(w):
    p = pp.make_ANl(5, 2)
    assert pp.complement_pp(pp.complement_pp(p)).classify_word(w) is p.classify_word(w)
    assert pp.complement_pp(p).classify_word(w) is {Y: NO, NO: Y, OUT: OUT}[p.classify_word(w)]


def test_intersection_with_complement_is_empty():
    p = pp.make_ANl(5, 2)
    q = pp.intersect_pp(p, pp.complement_pp(p))
    assert all(q.classify_word(w) is OUT for w in pp.all_words("a", 20))


def test_parity_union_is_c():
    union = pp.union_pp(pp.make_odd_anbn(12), pp.make_even_anbn(12))
    c = pp.make_C(12)
    for w in pp.all_words("ab", 12):
        assert union.classify_word(w) is c.classify_word(w)


def test_union_undefined_regular():
    p = pp.make_ANl(5, 2)
    with pytest.raises(UnionUndefined) as info:
        pp.union_pp(p, pp.complement_pp(p))
    assert info.value.witness == ""


def test_subproblem_examples():
    a = pp.make_ANl(5, 2)
    assert pp.is_subproblem(a, a)
    assert pp.is_subproblem(pp.make_ANr1r2(7, 1, 3), pp.make_Ap(7))
    r = pp.is_subproblem(pp.make_C(12), pp.make_odd_anbn(12))
    assert not r and r.witness == "" and r.bound == 12
    # the text-level witness: aabb is a yes-instance of C but not of the odd problem
    assert pp.make_odd_anbn().classify_word("aabb") is not Y


POOL = [pp.make_ANl(6, 3), pp.make_ANr1r2(6, 6, 3), pp.make_ANr1r2(6, 2, 5), pp.make_ANl(2, 1), pp.make_ANl(3, 1)]


def test_subproblem_is_partial_order():
    le = {(i, j): bool(pp.is_subproblem(a, b)) for i, a in enumerate(POOL) for j, b in enumerate(POOL)}
    n = len(POOL)
    for i in range(n):
        assert le[i, i]
        for j in range(n):
            if le[i, j] and le[j, i]:
                assert all(POOL[i].classify_word(w) is POOL[j].classify_word(w) for w in pp.all_words("a", 16))
            for k in range(n):
                if le[i, j] and le[j, k]:
                    assert le[i, k]
    assert le[1, 0] and le[0, 1]  # residue 6 and residue 0 coincide mod 6


def test_make_family_descriptor():
    assert pp.make_family("ANl", {"N": 5, "l": 2}).classify_word("aa") is NO
    with pytest.raises(InvalidParameter):
        pp.make_family("ANl", {"N": 5})
    with pytest.raises(InvalidParameter):
        pp.make_family("nope", {})
