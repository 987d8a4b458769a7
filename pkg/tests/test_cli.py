import json
import subprocess
import sys

import pytest

from gwlab.cli import main


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def test_invariants_json(capsys):
    rc, out, _ = run(capsys, "invariants", "<1,2> - H", "--json")
    assert rc == 0
    data = json.loads(out)
    assert data["dim"] == 0
    assert data["sig"] == [2]
    assert data["torsion"] is False
    rc, out, _ = run(capsys, "invariants", "<-1> - 1", "--json")
    assert json.loads(out)["torsion"] is False
    rc, out, _ = run(capsys, "invariants", "<2> - 1", "--json")
    assert json.loads(out)["torsion"] is True
    assert [p for p, _ in data["hasse"]][:2] == ["inf", "2"]


def test_invariants_text(capsys):
    rc, out, _ = run(capsys, "--field", "F7", "invariants", "<3, 5>")
    assert rc == 0
    assert "dim  2" in out


@pytest.mark.parametrize(
    "left,right,field,verdict,code",
    [
        ("<1,1>", "<2,2>", "Q", "Equal", 0),
        ("<1,1>", "<3,3>", "Q", "NotEqual", 1),
        ("<1,-1>", "H", "Q", "Equal", 0),
        ("<3>", "<5>", "F7", "Equal", 0),
    ],
)
def test_isometric_exit_codes(capsys, left, right, field, verdict, code):
    rc, out, _ = run(capsys, "isometric", left, right, "--field", field)
    assert rc == code
    assert out.strip() == verdict


def test_flags_before_or_after_subcommand(capsys):
    _, a, _ = run(capsys, "--field", "F5", "eval", "<2> * <2>")
    _, b, _ = run(capsys, "eval", "<2> * <2>", "--field", "F5")
    assert a == b


def test_norm_and_transfer(capsys):
    rc, out, _ = run(capsys, "norm", "--algebra", "Q[sqrt 5]", "--expr", "-1", "--json")
    assert rc == 0
    assert json.loads(out)["dim"] == 1
    rc, out, _ = run(capsys, "transfer", "--algebra", "Q[sqrt 5]", "--expr", "1")
    assert rc == 0
    assert out.strip() in ("<2> + <10>", "<10> + <2>")
    rc, out, _ = run(capsys, "norm", "--algebra", "Q x Q", "--expr", "<2>", "--expr", "<3>")
    assert out.strip() == "<6>"


def test_exp_log_grexp(capsys):
    rc, out, _ = run(capsys, "exp", "--base", "-1", "--exponent", "tr(Q[sqrt 5])")
    assert rc == 0
    rc2, out2, _ = run(capsys, "isometric", out.strip(), "<2> + <10> - 1")
    assert rc2 == 0
    rc, out, _ = run(capsys, "log", "--expr", "exp(-1; (<2>-1)*(<3>-1))")
    assert rc == 0
    rc2, _, _ = run(capsys, "isometric", out.strip(), "(<2>-1)*(<2>-1)*(<3>-1)")
    assert rc2 == 0
    rc, out, _ = run(capsys, "grexp", "--base", "-1", "--exponent", "(<3>-1)*(<t1>-1)", "--vars", "1", "--json")
    assert rc == 0
    assert json.loads(out)["vars"] == 1


def test_hilbert(capsys):
    assert run(capsys, "hilbert", "2", "5", "5")[1].strip() == "-1"
    assert run(capsys, "hilbert", "-1", "-1", "inf")[1].strip() == "-1"
    assert run(capsys, "hilbert", "-1", "-1", "3")[1].strip() == "1"


def test_errors_exit_2(capsys):
    rc, _, err = run(capsys, "eval", "<1,2")
    assert rc == 2 and "position" in err
    rc, _, err = run(capsys, "--field", "R", "eval", "1")
    assert rc == 2
    rc, _, err = run(capsys, "log", "--expr", "-1")
    assert rc == 2
    rc, _, err = run(capsys, "check", "log", "--field", "F7", "--samples", "1")
    assert rc == 2


def test_check_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "check", "hilbert", "--samples", "20", "--seed", "4", "--out", str(a))[0] == 0
    assert run(capsys, "check", "hilbert", "--samples", "20", "--seed", "4", "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    report = json.loads(a.read_text())
    assert report["passed"] is True


def test_check_field_filter(capsys):
    rc, out, _ = run(capsys, "check", "wittkop", "--field", "F3", "--samples", "5", "--json", "--no-transcripts")
    assert rc == 0
    data = json.loads(out)
    assert data["passed"] is True


def test_console_script_runs():
    out = subprocess.run(
        [sys.executable, "-m", "gwlab.cli", "hilbert", "3", "3", "3"], capture_output=True, text=True, check=False
    )
    assert out.returncode == 0
    assert out.stdout.strip() == "-1"
