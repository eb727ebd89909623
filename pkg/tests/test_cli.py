"""Tests for the command-line driver."""

import json

import pytest

from gaugekit import cli
from gaugekit.commands import REGISTRY, Check
from gaugekit.reports import CheckResult


def _failing(config, rng):
    return [CheckResult("failing.value", 1.0, 0.0, "always fails")]


def test_list_prints_every_check(capsys):
    assert cli.main(["list"]) == 0
    out = capsys.readouterr().out
    for name in REGISTRY:
        assert name in out


def test_missing_target_is_usage_error():
    assert cli.main(["check"]) == 2


def test_unknown_check_is_usage_error():
    assert cli.main(["check", "no-such-check", "--quiet"]) == 2


def test_unknown_fixture_is_usage_error():
    assert cli.main(["check", "cocycles", "--fixture", "klein_bottle", "--quiet"]) == 2


def test_non_positive_step_is_usage_error():
    assert cli.main(["check", "reps", "--h", "0"]) == 2


def test_stdout_report_is_deterministic(capsys):
    assert cli.main(["check", "reps", "--out", "-", "--quiet"]) == 0
    first = capsys.readouterr().out
    assert cli.main(["check", "reps", "--out", "-", "--quiet"]) == 0
    second = capsys.readouterr().out
    assert first == second
    assert first.splitlines()[0] == "name,value,tolerance,pass"
    assert "reps.pauli_product" in first


def test_report_file(tmp_path):
    out = tmp_path / "reps.json"
    assert cli.main(["check", "reps", "--out", str(out), "--format", "json", "--quiet"]) == 0
    data = json.loads(out.read_text())
    assert data["command"] == "check reps"
    assert data["passed"] is True


def test_failing_check_exit_code(monkeypatch, tmp_path):
    monkeypatch.setitem(REGISTRY, "failing", Check("failing", "physics", "always fails", _failing))
    assert cli.main(["check", "failing", "--out", str(tmp_path), "--quiet"]) == 1
    assert (tmp_path / "check_failing.csv").exists()


@pytest.mark.parametrize("charge", ["0.5", "0.3"])
def test_monopole_command(charge, capsys):
    """Unquantized charges fail their transition check, as expected, without failing the run."""
    assert cli.main(["monopole", "--g", charge, "--out", "-", "--quiet"]) == 0
    out = capsys.readouterr().out
    transition = next(line for line in out.splitlines() if line.startswith(f"monopole.g{charge}.transition"))
    assert transition.endswith("true" if charge == "0.5" else "false")


@pytest.mark.parametrize("name", sorted(REGISTRY))
def test_every_registered_check_exits_clean(name, tmp_path):
    out = tmp_path / f"{name}.json"
    assert cli.main(["check", name, "--out", str(out), "--format", "json", "--quiet"]) == 0
    data = json.loads(out.read_text())
    assert data["passed"] is True
    assert data["checks"]


def test_randomized_check_report_is_byte_identical(capsys):
    assert cli.main(["check", "gauge-covariance", "--out", "-", "--quiet"]) == 0
    first = capsys.readouterr().out
    assert cli.main(["check", "gauge-covariance", "--out", "-", "--quiet"]) == 0
    assert capsys.readouterr().out == first
    assert first.count("\n") > 1


def test_bianchi_reports_coarse_and_requested_step(capsys):
    assert cli.main(["check", "bianchi", "--h", "1e-4", "--out", "-", "--quiet"]) == 0
    rows = {line.split(",")[0]: line for line in capsys.readouterr().out.splitlines()[1:]}
    assert rows["bianchi.residual.h=0.001"].endswith(",true")
    assert rows["bianchi.residual.h=0.0001"].endswith(",true")
    assert "bianchi.order" in rows
