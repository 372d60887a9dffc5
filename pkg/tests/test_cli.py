import json
import subprocess
import sys

import pytest

from deckgroups import cli


def run(capsys, *argv):
    try:
        code = cli.main(list(argv))
    except SystemExit as exc:  # argparse usage errors
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_converse_example(capsys):
    code, out, _ = run(capsys, "classify", "--normal-form", "1,-1,1,i", "--degree", "4", "--k-max", "3")
    assert code == 0
    report = json.loads(out)
    assert [lv["type"] for lv in report["levels"]] == ["Z_4"] * 3
    assert report["verdict"] == "consistent" and report["critically_coalescing"]


def test_classify_dihedral(capsys):
    code, out, _ = run(capsys, "classify", "--normal-form", "[1,-1,1,1]", "--degree", "2", "--k-max", "3")
    assert code == 0
    assert [lv["order"] for lv in json.loads(out)["levels"]] == [2, 4, 8]


def test_classify_power_map(capsys):
    code, out, _ = run(capsys, "classify", "--normal-form", "1,0,0,1", "--degree", "6", "--k-max", "2")
    report = json.loads(out)
    assert code == 0 and report["power_map"]
    assert [lv["type"] for lv in report["levels"]] == ["Z_6", "Z_36"]


def test_deck_output(capsys):
    code, out, _ = run(capsys, "deck", "--normal-form", "1,-1,1,1", "--degree", "2", "--k-max", "2")
    obj = json.loads(out)
    assert code == 0
    assert [g["order"] for g in obj["groups"]] == [2, 4]
    assert obj["groups"][1]["group_type"] == "D_4"
    assert obj["map"]["d"] == 2


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--normal-form", "1,-1,1,1", "--degree", "2", "--k-max", "3")
    obj = json.loads(out)
    assert code == 0 and obj["match"]
    assert [lv["oracle_order"] for lv in obj["levels"]] == [2, 4, 8]


def test_verify_too_large(capsys):
    code, _, err = run(capsys, "verify", "--normal-form", "1,-1,1,1", "--degree", "5", "--k-max", "3")
    assert code == 1 and "exceeds" in err


def test_suite(capsys):
    code, out, _ = run(capsys, "suite", "--degrees", "3,4", "--count", "8", "--seed", "3", "--coalescing")
    obj = json.loads(out)
    assert code == 0
    assert obj["count"] == 8 and obj["passed"] == 8 and obj["failures"] == []


def test_suite_is_deterministic(capsys):
    args = ("suite", "--degrees", "2,5", "--count", "6", "--seed", "11", "--k-max", "3")
    first = run(capsys, *args)[1]
    second = run(capsys, *args, "--workers", "3")[1]
    assert first == second


def test_deck_output_is_byte_identical(capsys):
    args = ("deck", "--normal-form", "1,-2,1,2", "--degree", "6", "--k-max", "3", "--seed", "4")
    assert run(capsys, *args)[1] == run(capsys, *args)[1]


@pytest.mark.parametrize("argv, fragment", [
    (["classify", "--normal-form", "1,1,1,1", "--degree", "3"], "vanishes"),
    (["classify", "--normal-form", "1,2,3", "--degree", "3"], "4 coefficients"),
    (["classify", "--normal-form", "1,x,3,4", "--degree", "3"], "beta"),
    (["classify", "--normal-form", "1,0,1,1", "--degree", "1"], "degree"),
    (["classify", "--normal-form", "1,0,1,1"], "--degree"),
    (["classify", "--degree", "3"], "give the map"),
    (["classify", "--normal-form", "1,0,1,1", "--degree", "3", "--k-max", "0"], "k-max"),
    (["classify", "--normal-form", "1,0,1,1", "--degree", "3", "--eps", "-1"], "eps"),
    (["classify", "--input", "{not json"], "--input"),
    (["classify", "--input", "/nonexistent/map.json"], "neither"),
    (["suite", "--count", "0"], "count"),
    (["suite", "--degrees", "1,3"], "degrees"),
    (["suite", "--degrees", "a"], "degrees"),
    (["classify", "--normal-form", "1,0,1,1", "--degree", "3", "--format", "xml"], "invalid choice"),
])
def test_input_errors_exit_1(capsys, argv, fragment):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert fragment in err


def test_missing_mode_exits_1(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main([])
    assert exc.value.code == 1


def test_input_file_and_pre_post(capsys, tmp_path):
    path = tmp_path / "map.json"
    path.write_text(json.dumps({"normal_form": {"alpha": 1, "beta": -1, "gamma": 1, "delta": 1, "d": 2}}))
    code, out, _ = run(capsys, "classify", "--input", str(path), "--k-max", "3")
    assert code == 0 and json.loads(out)["levels"][2]["type"] == "D_8"
    post = json.dumps({"a": 1, "b": -1, "c": 1, "d": 1})
    code, out2, _ = run(capsys, "classify", "--post", post, "--degree", "2", "--k-max", "3")
    assert code == 0 and out2 == out


def test_deck_eps_environment(capsys, monkeypatch):
    monkeypatch.setenv("DECK_EPS", "1e-8")
    code, _, _ = run(capsys, "classify", "--normal-form", "1,-1,1,1", "--degree", "2", "--k-max", "2")
    assert code == 0
    monkeypatch.setenv("DECK_EPS", "tiny")
    code, _, err = run(capsys, "classify", "--normal-form", "1,-1,1,1", "--degree", "2")
    assert code == 1 and "DECK_EPS" in err


def test_table_format(capsys):
    code, out, _ = run(capsys, "classify", "--normal-form", "1,-1,1,1", "--degree", "2",
                       "--k-max", "3", "--format", "table")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split() == ["k", "order", "type"]
    assert lines[4].split() == ["3", "8", "D_8"]
    assert "verdict: consistent" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "deckgroups.cli", "classify", "--normal-form",
                           "1,1,1,-1", "--degree", "3", "--k-max", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["levels"][1]["type"] == "Z_3"
