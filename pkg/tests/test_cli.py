import json
import subprocess
import sys

import pytest

from lpmpoly import cli
from lpmpoly.cli import main, parse_matroid_spec
from lpmpoly.errors import ParseError
from lpmpoly.lpm import Snake, direct_sum


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    lines = out.strip().splitlines()
    assert len(lines) == 1
    return code, json.loads(lines[0]), err


def test_parse_specs():
    assert parse_matroid_spec("S(2,2)") == Snake((2, 2)).to_lpm()
    assert parse_matroid_spec(" U=110 , L=011 ") == Snake((1, 2)).to_lpm()
    s1 = Snake((1,)).to_lpm()
    assert parse_matroid_spec("S(1) + S(1)") == direct_sum(s1, s1)


@pytest.mark.parametrize("text", ["S(0,2)", "S(2,", "U=110", "U=110,L=01", "U=011,L=110", "S(1)+", "T(2)"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_matroid_spec(text)


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse_matroid_spec("S(1) + S(0)")
    assert info.value.position is not None and info.value.position >= 7


def test_info(capsys):
    code, doc, _ = run_json(capsys, "info", "S(2,2)")
    assert code == 0
    assert (doc["n"], doc["r"], doc["bases"], doc["connected"], doc["snake"]) == (4, 2, "5", True, "S(2,2)")


def test_info_identifies_s12(capsys):
    code, doc, _ = run_json(capsys, "info", "U=110,L=011")
    assert code == 0 and doc["snake"] == "S(1,2)"
    code, out, _ = run(capsys, "info", "U=110,L=011")
    assert "S(1,2)" in out


def test_info_parse_error(capsys):
    code, out, err = run(capsys, "info", "S(0,2)")
    assert code == 2 and "ParseError" in err and out == ""
    code, doc, _ = run_json(capsys, "info", "S(0,2)")
    assert code == 2 and doc["error"] == "ParseError" and "position" in doc


def test_count(capsys):
    assert run(capsys, "count", "S(2,2)", "--k", "2")[1].strip() == "14"
    assert run(capsys, "count", "S(2,2)", "--k", "0")[1].strip() == "1"
    code, out, _ = run(capsys, "count", "S(2,2)", "--k", "1", "--all-methods")
    assert code == 0 and out.strip() == "dp=5 matrix=5 brute=5"
    code, doc, _ = run_json(capsys, "count", "S(2,3)", "--k", "3", "--method", "matrix")
    # sum_{j<=3} C(1+j,1) C(2+j,2) = 1 + 6 + 18 + 40
    assert doc["count"] == "65"


def test_count_matrix_needs_snake(capsys):
    code, _, err = run(capsys, "count", "S(1)+S(1)", "--k", "1", "--method", "matrix")
    assert code == 2 and "MethodInapplicable" in err
    # --all-methods skips inapplicable routes
    code, out, _ = run(capsys, "count", "S(1)+S(1)", "--k", "1", "--all-methods")
    assert code == 0 and out.strip() == "dp=4 brute=4"


def test_count_mismatch_exit(capsys, monkeypatch):
    monkeypatch.setattr(cli, "brute_force_count", lambda M, k: 99)
    code, doc, _ = run_json(capsys, "count", "S(2,2)", "--k", "1", "--all-methods")
    assert code == 3 and doc["agree"] is False


def test_env_cap(capsys, monkeypatch):
    monkeypatch.setenv("LPM_ENUM_CAP", "10")
    code, _, err = run(capsys, "count", "S(2,2)", "--k", "1", "--method", "brute")
    assert code == 2 and "TooLarge" in err
    code, out, _ = run(capsys, "count", "S(2,2)", "--k", "1", "--all-methods")
    assert code == 0 and out.strip() == "dp=5 matrix=5"


def test_ehrhart(capsys):
    code, doc, err = run_json(capsys, "ehrhart", "S(2,2)", "--hstar")
    assert code == 0
    assert doc["coefficients"] == ["1/1", "13/6", "3/2", "1/3"]
    assert doc["hstar"] == ["1", "1", "0", "0"] and doc["unimodal"] is True
    assert "unimodal" in err
    assert "t + 1" in run(capsys, "ehrhart", "S(1)")[1]


def test_ehrhart_closed_form(capsys):
    code, out, _ = run(capsys, "ehrhart", "S(2,3)", "--closed-form")
    assert code == 0 and "closed form equals interpolation: OK" in out
    code, _, err = run(capsys, "ehrhart", "S(1,2)", "--closed-form")
    assert code == 2 and "MethodInapplicable" in err


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "count", "--max-cells", "6", "--max-k", "3")
    assert code == 0 and "pass" in out
    code, doc, _ = run_json(capsys, "verify", "--suite", "dpoly")
    assert code == 0 and doc["passed"] is True and doc["checked"] > 0


@pytest.mark.parametrize("suite", sorted(cli.SUITES))
def test_every_suite_passes_small(capsys, suite):
    code, doc, _ = run_json(capsys, "verify", "--suite", suite, "--max-cells", "5", "--max-k", "2", "--max-n", "5")
    assert code == 0, doc


def test_verify_unknown_suite(capsys):
    code, _, err = run(capsys, "verify", "--suite", "nosuch")
    assert code == 2 and "UnknownSuite" in err


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["count"])
    assert info.value.code == 2
    capsys.readouterr()


def test_determinism_and_jobs(capsys):
    argv = ["verify", "--suite", "dpoly", "--seed", "7", "--samples", "20", "--json"]
    first = run(capsys, *argv)
    assert run(capsys, *argv) == first
    threaded = run(capsys, *argv, "--jobs", "4")
    assert threaded == first


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "lpmpoly", "count", "S(2,2)", "--k", "3"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert res.returncode == 0 and res.stdout.strip() == "30"
