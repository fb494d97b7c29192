import json
import subprocess
import sys

import pytest

from k3salem.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def result(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    env = json.loads(out)
    assert set(env) == {"command", "inputs", "result", "citations"}
    return env["result"]


def test_oguiso(capsys):
    r = result(capsys, "oguiso")
    assert r["gram"] == [[4, 2], [2, -4]]
    assert r["matrix"] == [[5, 8], [8, 13]]
    assert r["fixed_point_count"] == 0


def test_trace_18(capsys):
    r = result(capsys, "trace", "--u", "18", "--eps", "-1")
    assert len(r["realizations"]) == 1
    assert r["realizations"][0]["D"] == 20


def test_witness(capsys):
    r = result(capsys, "witness", "--alpha", "4", "--eps", "1")
    assert r["trace"] == 14
    assert r["gram"] == [[2, 4], [4, 2]]
    assert r["g"]["matrix"] == [[-1, -4], [4, 15]]


def test_pell(capsys):
    r = result(capsys, "pell", "--disc", "20", "--neg")
    assert (r["plus4"]["u"], r["plus4"]["w"]) == (18, 4)
    assert (r["minus4"]["u"], r["minus4"]["w"]) == (4, 1)
    r = result(capsys, "pell", "--disc", "-12", "--neg")
    assert r["minus4"] is None


def test_cf(capsys):
    r = result(capsys, "cf", "--radicand", "12")
    assert r["period"] == [2, 6] and r["parity"] == "even" and r["consistent"]


def test_classes(capsys):
    r = result(capsys, "classes", "--disc", "-20")
    assert r["D"] == 20
    assert {c["in_L_prime"] for c in r["classes"]} == {True, False}


def test_lprime(capsys):
    r = result(capsys, "lprime", "--gram=-2,0,10")
    assert r["in_L_prime"] is False
    x, y = r["witness"]["vector"]
    assert -x * x + 5 * y * y == -1
    assert result(capsys, "lprime", "--form", "2,2,-2")["in_L_prime"] is True
    r = result(capsys, "lprime", "--gram", "0,3,2")
    assert r["witness"]["norm"] == 0


def test_fixed_points(capsys):
    r = result(capsys, "fixed-points", "--alpha", "4", "--eps", "-1", "--prec", "15")
    assert r["fixed_point_count"] == 0
    assert r["spectral_radius"] == "(18+sqrt(320))/2"
    assert r["spectral_radius_decimal"] == "17.9442719099992"


def test_verify_small(capsys):
    code, out, _ = run(capsys, "verify", "--sweep", "--dmax", "200", "--alphamax", "20", "--biromax", "41")
    assert code == 0
    assert json.loads(out)["result"]["passed"] is True


@pytest.mark.parametrize("argv, fragment", [
    (["lprime", "--gram", "3,1,2"], "odd diagonal"),
    (["classes", "--disc", "-22"], "2 or 3 mod 4"),
    (["classes", "--disc", "-16"], "perfect square"),
    (["classes", "--disc", "20"], "must be negative"),
    (["pell", "--disc", "7"], "2 or 3 mod 4"),
    (["pell", "--disc", "9"], "perfect square"),
    (["witness", "--alpha", "5", "--eps", "-1"], "not in the admissible set"),
    (["trace", "--u", "18", "--eps", "2"], "--eps"),
    (["lprime", "--gram", "2,x,2"], "comma-separated"),
])
def test_errors_are_distinct(capsys, argv, fragment):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert fragment in err


def test_error_messages_differ():
    msgs = set()
    for argv in (["lprime", "--gram", "3,1,2"], ["classes", "--disc", "-22"], ["classes", "--disc", "-16"]):
        proc = subprocess.run([sys.executable, "-m", "k3salem.cli", *argv], capture_output=True, text=True)
        msgs.add(proc.stderr)
    assert len(msgs) == 3


@pytest.mark.parametrize("argv", [
    ["oguiso"],
    ["classes", "--disc", "-85"],
    ["trace", "--u", "123", "--eps", "-1", "--pretty"],
])
def test_byte_identical_runs(argv):
    if "--pretty" in argv:
        argv = ["--pretty"] + [a for a in argv if a != "--pretty"]
    outs = [subprocess.run([sys.executable, "-m", "k3salem.cli", *argv], capture_output=True).stdout
            for _ in range(2)]
    assert outs[0] == outs[1] and outs[0]


def test_pretty_is_indented(capsys):
    code, out, _ = run(capsys, "--pretty", "pell", "--disc", "5")
    assert code == 0 and "\n  " in out


def test_pretty_after_subcommand(capsys):
    code, out, _ = run(capsys, "pell", "--disc", "5", "--pretty")
    assert code == 0 and "\n  " in out
    assert "pretty" not in json.loads(out)["inputs"]
