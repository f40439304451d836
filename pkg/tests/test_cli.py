import json

import pytest

from promise_fa import jsonio
from promise_fa.cli import main
from promise_fa.complexity import build_appendix_pvdfa


@pytest.fixture
def run(capsys):
    def invoke(*argv):
        code = main(list(argv))
        out, err = capsys.readouterr()
        return code, out, err

    return invoke


@pytest.fixture
def ml1(tmp_path, run):
    path = tmp_path / "Ml1.json"
    assert run("construct", "--name", "Ml", "--l", "1", "--out", str(path))[0] == 0
    return path


def test_prob_no_instance(run, ml1):
    code, out, _ = run("prob", "--machine", str(ml1), "--word", "abb", "--format", "json")
    assert code == 0
    row = json.loads(out)[0]
    assert row["accept"] == pytest.approx(0, abs=1e-9) and row["reject"] == pytest.approx(1, abs=1e-9)


def test_prob_table_uses_12_digits(run, ml1):
    _, out, _ = run("prob", "--machine", str(ml1), "--word", "abbb")
    assert out.strip() == "abbb: accept 0.218546260497, reject 0.781453739502"


def test_family_classify(run):
    assert run("family", "--name", "Ap", "--p", "7", "--classify", "a3")[1].strip() == "No"
    assert run("family", "--name", "PloyEQ", "--eps", "1/3", "--classify", "(ab2#)9")[1].strip() == "No"
    assert run("family", "--name", "C", "--classify", "aba")[1].strip() == "OutsidePromise"


def test_compare_machine_and_minimization(run, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    jsonio.save(jsonio.machine_to_json(build_appendix_pvdfa(4, 6)), a)
    assert run("minimize", "--machine", str(a), "--out", str(b))[0] == 0
    code, out, _ = run("compare", "--a", str(a), "--b", str(b), "--format", "json")
    assert code == 0 and json.loads(out) == {"relation": "Equal", "witness_yes": None, "witness_no": None}
    assert run("compare", "--a", str(a), "--b", str(b))[1].strip() == "Equal"


def test_run_subcommand(run, tmp_path):
    a = tmp_path / "t10.json"
    run("construct", "--name", "theorem10", "--N", "5", "--l", "2", "--out", str(a))
    code, out, _ = run("run", "--machine", str(a), "--word", "a7", "--format", "json")
    assert code == 0 and json.loads(out) == [{"word": "aaaaaaa", "state": 2, "verdict": "Reject"}]


def test_word_file(run, ml1, tmp_path):
    words = tmp_path / "words.txt"
    words.write_text("ab\nabb\n\nba\n")
    code, out, _ = run("prob", "--machine", str(ml1), "--word-file", str(words), "--format", "csv")
    assert code == 0
    assert [line.split(",")[0] for line in out.strip().splitlines()] == ["word", "ab", "abb", "ba"]


def test_complexity_outputs(run, tmp_path):
    code, out, _ = run("complexity", "--family", "appendix", "--p", "4", "--q", "6", "--format", "csv")
    assert code == 0
    header, row = out.strip().splitlines()
    assert header == "family,params,s_yes,s_no,sr,ss,bounds_ok"
    assert row.endswith(",4,6,12,2,true")
    witness = tmp_path / "w.json"
    code, out, _ = run("complexity", "--family", "ANl", "--N", "5", "--l", "2", "--format", "json",
                       "--witness-out", str(witness))
    report = json.loads(out)
    assert code == 0 and report["sr"] == 5 and report["ss"] == 5
    assert jsonio.load_machine(witness).num_states == 5


def test_verify_theorem_exit_codes(run):
    code, out, _ = run("verify-theorem", "T11", "--p", "4", "--q", "6")
    assert code == 0 and out.strip().endswith("T11: PASS")
    code, out, _ = run("verify-theorem", "T9", "--family", "ANl", "--N", "5", "--l", "2", "--format", "json")
    report = json.loads(out)
    assert code == 0 and [(c["lhs"], c["rhs"]) for c in report["checks"]] == [(5, 5), (5, 24)]
    code, out, _ = run("verify-theorem", "T14", "--l", "1", "--max-len", "14")
    assert code == 1 and "FAIL" in out  # the mirror words #a = #b + 1 are rejected too


def test_sample_is_deterministic(run, tmp_path):
    m = tmp_path / "q.json"
    run("construct", "--name", "polyeq", "--out", str(m))
    first = run("sample", "--machine", str(m), "--word", "abb#", "--samples", "300", "--seed", "5")
    second = run("sample", "--machine", str(m), "--word", "abb#", "--samples", "300", "--seed", "5")
    assert first == second and first[0] == 0


def test_usage_errors(run, tmp_path):
    assert run("verify-theorem", "T99")[0] == 2
    assert run("prob", "--machine", str(tmp_path / "missing.json"), "--word", "a")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind":"dfa","alphabet":["a"],"states":2,"initial":0,"transitions":{"a":[1,5]},"accepting":[]}')
    code, _, err = run("run", "--machine", str(bad), "--word", "a")
    assert code == 2 and "$.transitions.a[1]" in err
    assert run("construct", "--name", "Ml", "--l", "3")[0] == 2
    assert run("family", "--name", "Ap", "--p", "7")[0] == 0
    assert run("prob", "--machine", str(bad))[0] == 2


def test_json_outputs_round_trip(run, tmp_path):
    code, out, _ = run("construct", "--name", "recognizer", "--family", "ANl", "--N", "4", "--l", "1")
    m = jsonio.machine_from_json(json.loads(out))
    assert code == 0 and m.num_states == 4
    code, out, _ = run("family", "--name", "appendix", "--p", "4", "--q", "6")
    assert jsonio.problem_from_json(json.loads(out)).name == "appendix(4,6)"


def test_output_is_byte_identical(run):
    outs = {run("verify-theorem", "T17", "--seed", "3", "--format", "json")[1] for _ in range(2)}
    assert len(outs) == 1


def test_skipped_ss_is_an_empty_csv_field(run):
    code, out, _ = run("complexity", "--family", "ANl", "--N", "5", "--l", "2", "--max-states", "0", "--format", "csv")
    assert code == 0 and out.strip().splitlines()[1].endswith(",5,5,5,,true")
