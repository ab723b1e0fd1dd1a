import json
import subprocess
import sys

import pytest

from torus_kontsevich.cli import ORDER_ENV, main, parse_config, run
from torus_kontsevich.errors import ParameterError


def call(args, capsys):
    code = main(args)
    out, err = capsys.readouterr()
    return code, out, err


def test_invariant_json_example(capsys):
    code, out, _ = call(["invariant", "--p", "2", "--q", "3", "--order", "6", "--format", "json"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["z1"]["x^2"] == "-23/48"
    assert data["z2"]["x*y"] == "1/4"
    assert data["closed"]["theta2"] == "1/48"
    assert data["rational"]["closed_theta2"] == "1/48"
    assert data["strut"] == "0"


def test_lmo_text_example(capsys):
    code, out, _ = call(["lmo", "--p", "2", "--q", "3", "--r", "5"], capsys)
    assert code == 0
    assert "Theta2: 1/2" in out
    assert "Theta3 (conjectural): -5/4" in out
    assert "Theta: sigma_r/16" in out


def test_lmo_sigma_echoed(capsys):
    _, out, _ = call(["lmo", "--p", "2", "--q", "3", "--r", "5", "--sigma", "-8", "--format", "json"], capsys)
    data = json.loads(out)
    assert data["theta1"] == "-1/2"
    assert data["theta3"] == {"value": "-5/4", "conjectural": True}


def test_verify_unknot(capsys):
    code, out, _ = call(["verify", "--p", "1", "--q", "5"], capsys)
    assert code == 0
    assert "FAIL" not in out and out.count("PASS") >= 10


def test_verify_json(capsys):
    code, out, _ = call(["verify", "--p", "2", "--q", "3", "--order", "6", "--format", "json"], capsys)
    data = json.loads(out)
    assert code == 0 and data["passed"]
    assert all(c["passed"] for c in data["checks"])


def test_lift(capsys):
    code, out, _ = call(["lift", "--p", "2", "--q", "3", "--r", "5", "--format", "json"], capsys)
    data = json.loads(out)
    assert code == 0 and data["passed"]
    assert data["lifted_z2"]["edges"] == ["x", "y"]


def test_alexander(capsys):
    code, out, _ = call(["alexander", "--p", "2", "--q", "3"], capsys)
    assert code == 0 and out == "D_{2,3}(t) = t^-1 - 1 + t\n"
    _, out, _ = call(["alexander", "--p", "1", "--q", "4", "--format", "json"], capsys)
    assert json.loads(out)["text"] == "1"


@pytest.mark.parametrize(
    "args",
    [
        ["invariant", "--p", "2", "--q", "4"],
        ["invariant", "--p", "0", "--q", "3"],
        ["invariant", "--p", "2"],
        ["lift", "--p", "2", "--q", "3", "--r", "3"],
        ["lmo", "--p", "2", "--q", "3"],
        ["nonsense"],
        ["invariant", "--p", "two", "--q", "3"],
        ["invariant", "--p", "2", "--q", "3", "--order", "1"],
    ],
)
def test_parameter_errors_exit_2(args, capsys):
    code, out, err = call(args, capsys)
    assert code == 2
    assert out == ""
    assert err.startswith("error: ") and err.count("\n") == 1


def test_verify_failure_exit_1(monkeypatch):
    from torus_kontsevich import cli
    from torus_kontsevich.checks import CheckResult

    monkeypatch.setattr(cli, "verify_identities", lambda p, q, N: [CheckResult("forced", False)])
    code, out = run(parse_config(["verify", "--p", "2", "--q", "3"]))
    assert code == 1 and "FAIL forced" in out


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.txt"
    code, out, _ = call(["alexander", "--p", "2", "--q", "5", "--output", str(target)], capsys)
    assert code == 0 and out == ""
    assert target.read_text() == "D_{2,5}(t) = t^-2 - t^-1 + 1 - t + t^2\n"


def test_order_env(monkeypatch):
    monkeypatch.setenv(ORDER_ENV, "4")
    assert parse_config(["invariant", "--p", "2", "--q", "3"]).order == 4
    assert parse_config(["invariant", "--p", "2", "--q", "3", "--order", "6"]).order == 6
    monkeypatch.setenv(ORDER_ENV, "lots")
    with pytest.raises(ParameterError):
        parse_config(["invariant"])


def test_default_order(monkeypatch):
    monkeypatch.delenv(ORDER_ENV, raising=False)
    assert parse_config(["verify", "--p", "2", "--q", "3"]).order == 8


def test_deterministic_and_round_trip():
    cfg = parse_config(["invariant", "--p", "3", "--q", "4", "--order", "5", "--format", "json"])
    first, second = run(cfg)[1], run(cfg)[1]
    assert first == second
    assert json.dumps(json.loads(first), indent=2) + "\n" == first


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "torus_kontsevich", "alexander", "--p", "3", "--q", "4"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("D_{3,4}(t) = ")


def test_sweep_small_grid(monkeypatch):
    from torus_kontsevich import cli

    monkeypatch.setattr(cli, "sweep_grid", lambda rs: [(2, 3, [5]), (1, 2, [3])])
    code, out = run(parse_config(["sweep", "--order", "4", "--format", "json"]))
    data = json.loads(out)
    assert code == 0 and data["passed"]
    assert [(r["p"], r["q"]) for r in data["reports"]] == [(2, 3), (1, 2)]
