import json
from pathlib import Path

import pytest

from flagdivisor.cli import main
from flagdivisor.polyring import Polynomial, VarId, unit_equal

GOLDEN = Path(__file__).parent / "golden"

GOLDEN_COMMANDS = [
    ["divisor", "--n", "4", "--flag", "1,3"],
    ["equations", "--n", "7", "--flag", "3,6", "--i", "4"],
    ["equations", "--n", "7", "--flag", "3,6", "--i", "5"],
    ["equations", "--n", "4", "--flag", "2"],
    ["bruhat", "--n", "3", "--u", "2,1,3", "--v", "2,3,1", "--flag", "1"],
]


def run(capsys, argv):
    code = main(argv)
    return code, capsys.readouterr().out


@pytest.mark.parametrize("argv", GOLDEN_COMMANDS, ids=lambda argv: " ".join(argv))
def test_golden(capsys, argv):
    code, out = run(capsys, argv)
    assert code == 0
    assert out == (GOLDEN / ("_".join(argv) + ".txt")).read_text(encoding="utf-8")


def x(*indices):
    return Polynomial.var(VarId.plucker(indices))


def test_equation_matches_alternate_form(capsys):
    _, out = run(capsys, ["equations", "--n", "7", "--flag", "3,6", "--i", "4"])
    expected = x(2, 3, 4) * x(1, 3, 4, 5, 6, 7) - x(1, 3, 4) * x(2, 3, 4, 5, 6, 7)
    _, out_json = run(capsys, ["equations", "--n", "7", "--flag", "3,6", "--i", "4", "--format", "json"])
    component = json.loads(out_json)["components"][0]
    assert unit_equal(Polynomial.from_json(component["equation"]), expected)
    assert out.count("\n") == 1


def test_output_is_deterministic(capsys):
    _, first = run(capsys, ["divisor", "--n", "6", "--flag", "2,5", "--format", "json"])
    _, second = run(capsys, ["divisor", "--n", "6", "--flag", "2,5", "--format", "json"])
    assert first == second


def test_divisor_json(capsys):
    _, out = run(capsys, ["divisor", "--n", "4", "--flag", "1,3", "--format", "json"])
    data = json.loads(out)
    assert data["flag"] == {"n": 4, "steps": [1, 3]}
    assert [(c["case"], c["i"]) for c in data["components"]] == [(1, 1), (1, 3), (2, 1), (2, 3), (5, 2)]
    quadric = Polynomial.from_json(data["components"][-1]["equation"])
    assert quadric.to_text(4) == "x_{1}*x_{234} - x_{2}*x_{134}"


def test_out_file(capsys, tmp_path):
    target = tmp_path / "divisor.txt"
    code, out = run(capsys, ["divisor", "--n", "4", "--flag", "1,3", "--out", str(target)])
    assert code == 0
    assert out == ""
    assert target.read_text(encoding="utf-8") == (GOLDEN / "divisor_--n_4_--flag_1,3.txt").read_text(encoding="utf-8")


@pytest.mark.parametrize(
    "argv",
    [
        ["divisor", "--n", "4", "--flag", "3,1"],
        ["divisor", "--n", "4", "--flag", "1,4"],
        ["divisor", "--n", "4", "--flag", "a"],
        ["equations", "--n", "4", "--flag", "2", "--i", "4"],
        ["verify", "--suite", "gamma", "--max-n", "3"],
        ["verify", "--suite", "nope", "--seed", "1"],
        ["verify", "--suite", "gamma", "--max-n", "3", "--seed", "1", "--trials", "0"],
        ["bruhat", "--n", "3", "--u", "2,1", "--v", "1,2,3"],
        ["bruhat", "--n", "3", "--u", "2,2,1", "--v", "1,2,3"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_pi1_table(capsys):
    code, out = run(capsys, ["pi1-table", "--n", "3"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].split() == ["word", "window", "gamma", "rank"]
    rows = [line.split() for line in lines[1:]]
    assert [row[0] for row in rows] == ["id", "s1", "s2", "s1s2", "s2s1", "s1s2s1"]
    assert [int(row[-1]) for row in rows] == [0, 1, 1, 2, 2, 2]


def test_pi1_prediction(capsys):
    _, out = run(capsys, ["pi1-table", "--n", "4", "--flag", "2"])
    assert out == "Fl(2;4): rank 3\n"
    _, out = run(capsys, ["pi1-table", "--n", "4", "--flag", "2", "--format", "json"])
    assert json.loads(out) == {"flag": {"n": 4, "steps": [2]}, "rank": 3}


def test_bruhat_without_flag(capsys):
    _, out = run(capsys, ["bruhat", "--n", "3", "--u", "2,3,1", "--v", "2,1,3"])
    assert out == "bruhat_leq: false\n"


def test_verify_passes(capsys):
    code, out = run(capsys, ["verify", "--suite", "gamma", "--max-n", "4", "--seed", "1"])
    assert code == 0
    assert out.rstrip().endswith("suite gamma: PASS (pass: 22)")


def test_verify_json(capsys):
    code, out = run(capsys, ["verify", "--suite", "blockdet", "--max-n", "3", "--seed", "5", "--format", "json"])
    data = json.loads(out)
    assert code == 0
    assert data["passed"] is True
    assert data["seed"] == 5
    assert data["results"]


def test_verify_is_reproducible(capsys):
    argv = ["verify", "--suite", "irr", "--max-n", "3", "--seed", "42", "--format", "json"]
    _, first = run(capsys, argv)
    _, second = run(capsys, argv)
    assert first == second


def test_verify_failure_exits_1(capsys, monkeypatch):
    from flagdivisor import suites

    monkeypatch.setattr(suites, "verify_component", lambda flag, i: i != 1)
    code, out = run(capsys, ["verify", "--suite", "case5", "--max-n", "3", "--seed", "0"])
    assert code == 1
    assert "suite case5: FAIL" in out


def test_verify_lemmared(capsys):
    code, out = run(capsys, ["verify", "--suite", "lemmared", "--max-n", "3", "--seed", "1"])
    assert code == 0
    assert out.rstrip().endswith("suite lemmared: PASS (pass: 12)")


def test_verify_blockdet_json_uses_report_keys(capsys):
    _, out = run(capsys, ["verify", "--suite", "blockdet", "--max-n", "2", "--seed", "3", "--format", "json"])
    checks = {row["check"] for row in json.loads(out)["results"]}
    assert {"corvars", "cortop", "lemma3"} <= checks
