import json

import jsonschema
import pytest

from subrigid.cli import main
from subrigid.schemas import CERTIFICATE, SCHEMAS
from subrigid.stallings import from_json, to_json

from conftest import sg


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, command, *argv):
    code, out, err = run(capsys, command, "--format", "json", *argv)
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMAS[command])
    return code, doc


def test_closure_example(capsys):
    code, out, _ = run(capsys, "closure", "--ambient-rank", "2", "aa")
    assert (code, out.split()) == (0, ["a"])
    code, doc = run_json(capsys, "closure", "--ambient-rank", "2", "aa")
    assert doc == ["a"]


def test_member_example(capsys):
    code, out, _ = run(capsys, "member", "--ambient-rank", "2", "--subgroup", "a", "--", "b")
    assert (code, out.strip()) == (0, "false")
    code, doc = run_json(capsys, "member", "-s", "aa", "-s", "ab", "aaBA", "aB")
    assert doc == {"aaBA": True, "aB": False}


def test_check_crit_lattice_example(capsys):
    code, out, _ = run(capsys, "check-crit-lattice", "--seed", "7", "--trials", "50", "--ambient-rank", "2")
    assert code == 0
    assert "ok (50 checked)" in out


def test_fold_rank_basis(capsys):
    code, doc = run_json(capsys, "fold", "aa", "ab")
    assert code == 0 and from_json(json.dumps(doc)) == sg("aa", "ab")
    code, doc = run_json(capsys, "rank", "aa", "bb", "abab")
    assert doc == {"rank": 3, "index": None}
    code, doc = run_json(capsys, "rank", "a", "b")
    assert doc == {"rank": 2, "index": 1}
    code, doc = run_json(capsys, "basis", "a", "b", "ab")
    assert doc == ["a", "b"]
    code, out, _ = run(capsys, "basis", "aA")
    assert out.strip() == "(trivial subgroup)"


def test_intersect_and_join(capsys):
    code, doc = run_json(capsys, "intersect", "-s", "aa", "-s", "b", "aaa", "b")
    assert from_json(json.dumps(doc)) == sg("aaaaaa", "b")
    code, out, _ = run(capsys, "join", "-s", "aa", "aaa")
    assert out.split() == ["a"]


def test_quotients_pibar_crit(capsys):
    code, doc = run_json(capsys, "quotients", "--members", "aa", "bb", "abab")
    assert doc["count"] == 5 and doc["min_rank"] == 2 and doc["rank_histogram"] == {"2": 1, "3": 4}
    assert ["a", "b"] in doc["members"]
    code, doc = run_json(capsys, "pibar", "aa", "bb", "abab")
    assert doc == {"pi_bar": 2}
    code, doc = run_json(capsys, "crit", "aa")
    assert doc == {"pi_bar": 1, "members": [["a"], ["aa"]], "closure": ["a"]}


def test_analyze(capsys):
    code, doc = run_json(capsys, "analyze", "--ambient-rank", "2", "aa", "bb", "abab")
    assert (doc["pi_bar"], doc["beta0"], doc["beta1"], doc["chi"], doc["compressed"]) == (2, 0, 1, -1, False)
    code, out, _ = run(capsys, "analyze", "-r", "3", "aa")
    assert "beta0: 2" in out and "closure_basis: a" in out


def test_analyze_requires_ambient_rank(capsys):
    code, out, err = run(capsys, "analyze", "aa")
    assert code == 2 and out == "" and "ambient-rank" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["rank", "a1"],
        ["rank", "-r", "1", "b"],
        ["analyze", "-r", "1", "ab"],
        ["member", "b"],
        ["intersect", "a"],
        ["fold", "@/nonexistent/words.txt"],
    ],
)
def test_input_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err.startswith("error:")


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_enumeration_limit_exit_3(capsys, monkeypatch):
    monkeypatch.setenv("SUBRIGID_MAX_QUOTIENTS", "3")
    code, out, err = run(capsys, "quotients", "aa", "bb", "abab")
    assert code == 3 and "exceeded 3" in err


def test_word_files(tmp_path, capsys):
    f = tmp_path / "h.txt"
    f.write_text("# generators\naa\nbb\n\nabab\n")
    code, doc = run_json(capsys, "rank", f"@{f}")
    assert doc["rank"] == 3


def test_graph_files(tmp_path, capsys):
    f = tmp_path / "h.json"
    f.write_text(to_json(sg("aa", "bb", "abab")))
    code, doc = run_json(capsys, "pibar", f"@{f}")
    assert doc == {"pi_bar": 2}
    bad = tmp_path / "bad.json"
    bad.write_text('{"rank": 1, "vertices": 2, "basepoint": 0, "edges": [[1, 0, 1]]}')
    code, out, err = run(capsys, "rank", f"@{bad}")
    assert code == 2 and "degree" in err


def test_export(capsys):
    code, out, _ = run(capsys, "export", "--format", "dot", "aa", "ab")
    assert out.startswith("digraph") and "doublecircle" in out
    code, doc = run_json(capsys, "export", "aa", "ab")
    assert doc["edges"] == [[1, 0, 1], [1, 1, 0], [2, 1, 0]]


def test_check_inert_with_subgroup(capsys):
    code, doc = run_json(capsys, "check-inert", "--trials", "30", "--seed", "3", "a", "baB")
    assert code == 0 and doc["passed"] and doc["checked"] == 30
    code, doc = run_json(capsys, "check-inert", "--trials", "5", "aa", "bb", "abab")
    assert code == 0 and doc["passed"]


def test_check_strong_inert(capsys):
    code, doc = run_json(capsys, "check-strong-inert", "-r", "2", "-s", "a", "-s", "b", "aa", "bb", "abab")
    assert code == 0
    jsonschema.validate({k: v for k, v in doc["notes"].items() if k != "compressed"}, CERTIFICATE)
    assert doc["notes"] == {"compressed": False, "sum": 2, "bound": 1, "holds": False, "components": [3]}
    code, doc = run_json(capsys, "check-strong-inert", "--trials", "40", "--seed", "2", "-r", "2")
    assert code == 0 and doc["checked"] == 40


def test_violation_exits_1_with_replayable_certificate(capsys, monkeypatch):
    import subrigid.campaigns as campaigns

    # a deliberately broken intersection makes compressed subgroups look non-inert
    monkeypatch.setattr(campaigns, "intersect", lambda a, b: a)
    code, out, _ = run(capsys, "check-inert", "-r", "2", "--seed", "5", "--trials", "20", "--", "a", "baB")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMAS["check-inert"])
    assert code == 1 and not doc["passed"]
    cert = doc["counterexample"]
    assert set(cert) >= {"H", "L", "seed", "replay"}
    argv = cert["replay"].split()[1:]
    assert argv[argv.index("--seed") + 1] == str(cert["seed"])
    code, out, _ = run(capsys, *argv)
    assert code == 1 and json.loads(out)["counterexample"]["L"] == cert["L"]


def test_selftest_zero_budget(capsys):
    code, doc = run_json(capsys, "selftest", "--budget", "0")
    assert code == 0 and doc["suites"] == [] and doc["passed"]


def test_selftest_deterministic(capsys):
    code1, out1, _ = run(capsys, "selftest", "--seed", "4", "--format", "json")
    code2, out2, _ = run(capsys, "selftest", "--seed", "4", "--format", "json")
    assert code1 == code2 == 0
    assert out1 == out2
    doc = json.loads(out1)
    jsonschema.validate(doc, SCHEMAS["selftest"])
    assert all(s["passed"] for s in doc["suites"]) and len(doc["suites"]) == 10


def test_selftest_timings(capsys):
    code, out, _ = run(capsys, "selftest", "--budget", "1", "--timings")
    assert code == 0 and out.count("PASS") == 10 and "s\n" in out


def test_same_invocation_same_output(capsys):
    argv = ["check-crit-lattice", "--seed", "11", "--trials", "20", "-r", "3", "--format", "json"]
    assert run(capsys, *argv) == run(capsys, *argv)
