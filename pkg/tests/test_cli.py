"""CLI behaviour and golden outputs.

Set ``WOONTREE_REGEN_GOLDEN=1`` to rewrite the files under tests/golden.
"""

import json
import os
import subprocess
import sys
from fractions import Fraction as F
from pathlib import Path

import pytest

from woontree import cli
from woontree import verify as vf

GOLDEN_DIR = Path(__file__).parent / "golden"

GOLDEN = {
    "compositions.txt": ["compositions", "4"],
    "compositions.json": ["compositions", "5", "--parts", "1,2", "--json"],
    "tree.txt": ["tree", "--order", "4"],
    "tree.json": ["tree", "--input", "bernoulli_poly", "-N", "2", "--json"],
    "tree.dot": ["tree", "--input", "fibonacci", "-N", "3", "--dot", "--labeling", "both"],
    "sequence.txt": ["sequence", "bernoulli", "--order", "12"],
    "sequence.json": ["sequence", "bernoulli", "--order", "4", "--json"],
    "sequence_norlund_poly.txt": ["sequence", "norlund_poly", "--param", "p=2", "-N", "4", "--check"],
    "compose.txt": ["compose", "exp", "expm1", "--order", "8"],
    "compose.json": ["compose", "geometric", "catalan_root", "-N", "6", "--method", "convolution", "--param", "g0=-1", "--json"],
    "verify.txt": ["verify", "--suite", "sequences", "--max-n", "8"],
    "verify.json": ["verify", "--suite", "compositions", "--max-n", "8", "--json"],
    "digitsum.txt": ["digitsum", "log1p", "--order", "10"],
    "digitsum.json": ["digitsum", "norlund", "--param", "q=2", "-N", "5", "--json"],
    "iterated.txt": ["iterated", "--functions", "geometric,geometric,geometric", "--order", "5"],
    "iterated.json": ["iterated", "--functions", "exp,expm1,log1p", "-N", "4", "--shape", "2", "--json"],
    "iterated.dot": ["iterated", "--functions", "exp,geometric,log1p,expm1", "--shape", "4", "--dot"],
}


def run(argv):
    code, text = cli.run(argv)
    return code, text


@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_golden(name):
    code, text = run(GOLDEN[name])
    assert code == 0
    path = GOLDEN_DIR / name
    if os.environ.get("WOONTREE_REGEN_GOLDEN"):
        path.write_text(text, encoding="utf-8")
    assert path.read_text(encoding="utf-8") == text


def test_every_subcommand_has_a_golden_file():
    covered = {argv[0] for argv in GOLDEN.values()}
    assert covered == {"compositions", "tree", "sequence", "compose", "verify", "digitsum", "iterated"}


@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_output_is_deterministic(name):
    assert run(GOLDEN[name]) == run(GOLDEN[name])


def test_subprocess_output_is_byte_identical():
    argv = [sys.executable, "-m", "woontree", "sequence", "hermite", "-N", "6"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and b"8 x^3" in a


def test_compositions_of_three():
    assert run(["compositions", "3"]) == (0, "3\n2+1\n1+2\n1+1+1\n")


def test_bernoulli_json_values():
    code, text = run(["sequence", "bernoulli", "--order", "4", "--json"])
    assert code == 0
    assert json.loads(text)["values"] == ["1", "-1/2", "1/6", "0", "-1/30"]


def test_verify_all_passes(capsys):
    assert cli.main(["verify", "--suite", "all", "--max-n", "10"]) == 0
    out = capsys.readouterr().out
    assert f"{len(vf.CHECKS)}/{len(vf.CHECKS)} identities hold" in out
    for suite in vf.SUITES:
        assert f" {suite} " in out


def test_verify_failure_exits_one_with_witness(monkeypatch, capsys):
    bad = vf.Check("core", "deliberately false", lambda max_n: ("1..1", False, {"n": 1, "lhs": F(1, 2), "rhs": F(2)}))
    monkeypatch.setattr(vf, "CHECKS", [bad])
    assert cli.main(["verify"]) == 1
    out = capsys.readouterr().out
    assert "FAIL" in out and '"n": 1, "lhs": "1/2", "rhs": "2"' in out
    assert cli.main(["verify", "--json"]) == 1
    rows = json.loads(capsys.readouterr().out)
    assert rows == [{"identity": "deliberately false", "suite": "core", "n_range": "1..1", "status": "fail",
                     "witness": {"n": 1, "lhs": "1/2", "rhs": "2"}}]


@pytest.mark.parametrize(
    "argv, flag",
    [
        (["sequence", "bernoulli", "--order", "x"], "--order"),
        (["sequence", "norlund", "--param", "z=1"], "--param"),
        (["sequence", "norlund", "--param", "p"], "--param"),
        (["compose", "exp", "geometric", "--method", "convolution"], "--param"),
        (["iterated", "--functions", "exp,geometric", "--shape", "3"], "--shape"),
        (["iterated", "--functions", "exp"], "--functions"),
        (["tree", "--input", "nope"], "--input"),
        (["compositions", "0"], "n"),
    ],
)
def test_usage_errors_name_flag_and_show_help(argv, flag, capsys):
    assert cli.main(argv) == 2
    err = capsys.readouterr().err
    assert flag in err
    assert f"usage: woontree {argv[0]}" in err


def test_missing_subcommand_is_usage_error(capsys):
    assert cli.main([]) == 2
    assert "usage: woontree" in capsys.readouterr().err


def test_size_guard_is_friendly(capsys):
    assert cli.main(["compositions", "31"]) == 2
    err = capsys.readouterr().err
    assert "MAX_ENUMERATE=30" in err and "2^(n-1)" in err and "Traceback" not in err


def test_nonzero_inner_constant_is_reported(capsys):
    assert cli.main(["compose", "exp", "exp"]) == 2
    assert "nonzero constant term" in capsys.readouterr().err


def test_out_writes_file(tmp_path, capsys):
    target = tmp_path / "c.txt"
    assert cli.main(["compositions", "3", "--out", str(target)]) == 0
    assert capsys.readouterr().out == ""
    assert target.read_text() == "3\n2+1\n1+2\n1+1+1\n"


def test_explicit_coefficient_list():
    code, text = run(["compose", "geometric", "coeffs:0,1,1", "-N", "5", "--json"])
    assert json.loads(text)["coefficients"] == ["0", "1", "2", "3", "5", "8"]


def test_sequence_check_flag():
    code, text = run(["sequence", "catalan", "-N", "6", "--check", "--json"])
    obj = json.loads(text)
    assert code == 0 and obj["check"]["status"] == "pass"
    assert obj["values"] == ["1", "1", "2", "5", "14", "42", "132"]
