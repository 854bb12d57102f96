"""Command-line front end."""

import json

import pytest

from hadamard_inverse.cli import RunConfig, _parse_orders, main
from hadamard_inverse.config import RunLedger
from hadamard_inverse.exceptions import InvalidParametersError


def run_json(capsys, *argv):
    assert main(list(argv)) == 0
    return json.loads(capsys.readouterr().out)


def test_inverse_command(capsys):
    data = run_json(capsys, "inverse", "--germ", "example1", "-N", "16")
    assert data["schema"] == 1
    assert data["command"] == "inverse"
    inverse = [complex(*pair) for pair in data["inverse"]["coeffs"]]
    assert inverse[3] == pytest.approx(0.25)


def test_inverse_csv_output(capsys):
    assert main(["inverse", "--germ", "example2", "-N", "8", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "n,re_f,im_f,re_g,im_g"
    assert len(lines) == 9
    assert lines[1].split(",")[1] == "3.0"


def test_ode_command(capsys):
    data = run_json(capsys, "ode", "--germ", "example2", "-N", "200")
    assert data["passed"]
    assert data["operator"]["coeffs"] == [[3.0, 0.0], [5.0, 0.0], [1.0, 0.0]]
    assert sorted(tuple(p) for p in data["singular_points"]) == [(0.0, 0.0), (1.0, 0.0)]


def test_ode_refuses_non_rational_germ(capsys):
    assert main(["ode", "--germ", "log"]) == 2
    assert "error:" in capsys.readouterr().err


def test_hadamard_command_agrees_across_methods(capsys):
    data = run_json(capsys, "hadamard", "--germ", "example1", "--with", "log", "--zeta", "0.3")
    expected = 1.0 / 0.7
    for name in ("termwise", "on_I", "on_C", "on_KJ"):
        assert complex(*data["values"][name]) == pytest.approx(expected, rel=1e-10), name
    for name in ("on_I", "on_C", "K_part", "J_part"):
        refined = data["quadrature"][name]
        assert refined["converged"], name
        assert refined["nodes"] >= 512, name
        assert refined["difference"] < 1e-9, name


def test_scan_command(capsys):
    data = run_json(capsys, "scan", "--germ", "example1", "--inverse", "--orders", "8/8,10/10")
    assert data["inverse"] is True
    assert complex(*data["ratio"]["location"]) == pytest.approx(1.0, abs=1e-3)
    assert "principal sheet" in data["caveat"]


def test_probe_command(capsys):
    data = run_json(capsys, "probe", "--pair", "delta", "--k-stop", "6")
    assert len(data["samples"]) == 6
    assert complex(*data["samples"][-1]["scaled"]) == pytest.approx(-1.0)


def test_volterra_command(capsys):
    data = run_json(capsys, "volterra", "--A", "2", "--B", "0.5", "--f1", "exp", "-N", "12")
    assert data["unique"]
    assert data["log_residual"] < 1e-10
    assert data["residue_residual"] == pytest.approx(0.0)


def test_output_file_and_ledger(tmp_path, capsys):
    out = tmp_path / "artifacts" / "inverse.json"
    ledger_path = tmp_path / "runs.json"
    assert main(["inverse", "-N", "8", "--out", str(out), "--ledger", str(ledger_path), "--table"]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(out.read_text(encoding="utf-8"))["order"] == 8
    with RunLedger(ledger_path) as ledger:
        assert ledger.load("inverse:example1:8")["command"] == "inverse"


@pytest.mark.parametrize(
    "argv",
    [
        ["inverse", "--germ", "nosuch"],
        ["inverse", "-N", "4"],
        ["inverse", "--germ", "rational:omega=1,a=1|0"],
        ["scan", "--orders", "8-8"],
        ["volterra", "--A", "0"],
    ],
)
def test_precondition_failures_exit_with_2(argv, capsys):
    assert main(argv) == 2
    assert capsys.readouterr().err.startswith("error:")


def test_parse_orders():
    assert _parse_orders("12/12,16/14") == [(12, 12), (16, 14)]
    with pytest.raises(InvalidParametersError):
        _parse_orders("12")


def test_run_config_validation():
    with pytest.raises(InvalidParametersError):
        RunConfig("unknown", "example1", 64, 1e-10, 0, None, "json", False, None)


@pytest.mark.slow
def test_demo_command(capsys):
    data = run_json(capsys, "demo", "--seed", "7", "-N", "64")
    checks = data["checks"]
    assert checks["example1 inverse"] < 1e-14
    assert checks["example2 inverse"] < 1e-14
    assert checks["ladder inverse"] < 1e-14
    assert all(v < 1e-8 for name, v in checks.items() if name.startswith("random recurrence"))
