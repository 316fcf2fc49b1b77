"""
Tests for the command-line entry point.
"""

import json

import pytest

from cli import EXIT_ERROR, EXIT_OK, main
from domains.verifier.oracle import COMPARED


def _small_run(tmp_path):
    return ["--set", "grid.r_max=4", "--set", "grid.z_half=4", "--set", "grid.n_r=17", "--set", "grid.n_z=32",
            "--set", "solver.nu=1", "--set", "solver.dt=0.005", "--set", "solver.t_end=0.01",
            "--set", "initial.recipe=rest", "--set", "monitor.calibration_size=2",
            "--set", f"monitor.output_dir={tmp_path}"]


def test_validate_params(capsys):
    code = main(["validate-params", "--set", "criterion.eps=0.05", "--set", "criterion.delta0=0.2"])
    assert code == EXIT_OK
    assert json.loads(capsys.readouterr().out)["all_passed"] is True


def test_validate_params_outside_window(capsys):
    code = main(["validate-params", "--set", "criterion.eps=0.5"])
    assert code == EXIT_ERROR
    assert json.loads(capsys.readouterr().out)["error"] == "ParameterWindowError"


def test_bad_override(capsys):
    assert main(["validate-params", "--set", "criterion.eps"]) == EXIT_ERROR


def test_simulate_then_report(tmp_path, capsys):
    assert main(["simulate", "--name", "cli", "--seed", "3"] + _small_run(tmp_path)) == EXIT_OK
    simulated = json.loads(capsys.readouterr().out)
    assert simulated["verdict"]["status"] == "consistent"
    assert main(["report", "--name", "cli", "--runs-dir", str(tmp_path)]) == EXIT_OK
    reported = json.loads(capsys.readouterr().out)
    assert reported["status"] == "completed"
    assert reported["verdict"]["status"] == "consistent"
    assert reported["verdict"]["constant"] == simulated["verdict"]["constant"] == reported["constant"]["value"]
    assert reported["n_records"] == simulated["n_records"]


def test_report_missing_run(tmp_path):
    assert main(["report", "--name", "absent", "--runs-dir", str(tmp_path)]) == EXIT_ERROR


def test_verify(capsys):
    assert main(["verify", "--ensemble-size", "2", "--seed", "3"]) == EXIT_OK
    reports = json.loads(capsys.readouterr().out)
    assert len(reports) == 12


def test_oracle(capsys):
    assert main(["oracle-quadrature", "--size", "1", "--factor", "2", "--seed", "3"]) == EXIT_OK
    assert len(json.loads(capsys.readouterr().out)) == len(COMPARED)


def test_unknown_command():
    with pytest.raises(SystemExit):
        main(["teleport"])
