import pytest

from promise_fa.errors import InvalidParameter, UnknownTheoremId
from promise_fa.theorems import SUITES, verify_theorem

PASSING = [t for t in SUITES if t != "T14"]


@pytest.mark.parametrize("theorem", PASSING)
def test_suite_passes_with_defaults(theorem):
    report = verify_theorem(theorem)
    assert report.checks
    assert report.passed, [c for c in report.checks if not c.holds]


def test_t14_reports_mirror_words():
    report = verify_theorem("T14", {"l": 1, "max_len": 8})
    failing = {c.name for c in report.failures}
    assert failing == {"p_reject = 1 iff #b = #a + 1", "other words: max(p_accept, p_reject) <= 1 - 1e-6"}
    accept = next(c for c in report.checks if c.name == "p_accept = 1 iff #a = #b")
    assert accept.holds and accept.tol == 1e-9
    assert all("first: 'a'" == c.detail for c in report.failures)


@pytest.mark.parametrize(
    "theorem,params",
    [
        ("T9", {"family": "appendix", "p": 4, "q": 10}),
        ("T10", {"N": 7, "l": 3}),
        ("T11", {"p": 6, "q": 8}),
        ("T12", {"family": "ANl", "N": 4, "l": 1, "expect_ss": 2}),
        ("T12", {"family": "ANl", "N": 5, "l": 2, "expect_ss": 5}),
        ("T19-construct", {"p": 13}),
        ("T20-construct", {"p": 11}),
        ("T18", {"eps": 0.1, "max_nm": 3}),
        ("T3", {"family": "Ap", "p": 7}),
        ("T17", {"seed": 9, "pairs": 5}),
    ],
)
def test_suite_parameters(theorem, params):
    assert verify_theorem(theorem, params).passed


def test_report_shape():
    d = verify_theorem("T11", {"p": 4, "q": 6}).to_dict()
    assert d["passed"] and d["theorem"] == "T11"
    assert set(d["checks"][0]) == {"name", "lhs", "rhs", "tol", "holds", "detail"}


def test_unknown_id_and_builder_errors():
    with pytest.raises(UnknownTheoremId):
        verify_theorem("T4")
    with pytest.raises(InvalidParameter):
        verify_theorem("T11", {"p": 3, "q": 5})
