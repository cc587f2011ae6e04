import json

import pytest
from click.testing import CliRunner

import commands.pipeline as pipeline
import commands.runs as runs_module
from lab.sweeps import load_sweep, sweep_fingerprint
from main import cli


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def sweep_file(tmp_path):
    path = tmp_path / "tiny.json"
    path.write_text(json.dumps({
        "functions": ["cos"],
        "points": [0.0, 1.0],
        "index_families": ["arith:4"],
        "q_pairs": [[2, 2], [2, 1]],
        "quad_cells": 64,
    }))
    return path


@pytest.fixture
def recorded(monkeypatch, ledger):
    monkeypatch.setattr(pipeline, "get_ledger", lambda: ledger)
    monkeypatch.setattr(runs_module, "get_ledger", lambda: ledger)
    monkeypatch.setattr(pipeline, "RECORD_RUNS", True)
    return ledger


def test_coeffs_to_stdout(runner):
    result = runner.invoke(cli, ["coeffs", "--function", "cos3", "--degree", "4", "--no-record"])
    assert result.exit_code == 0
    assert "k,a_k,b_k,analytic_a_k,analytic_b_k" in result.output


def test_coeffs_to_file_with_manifest(runner, tmp_path):
    out = tmp_path / "cos3.csv"
    result = runner.invoke(cli, ["coeffs", "--function", "cos3", "--degree", "4", "--out", str(out), "--no-record"])
    assert result.exit_code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "k,a_k,b_k,analytic_a_k,analytic_b_k"
    assert len(lines) == 6
    manifest = json.loads((tmp_path / "cos3.csv.manifest.json").read_text())
    assert manifest["tool"] == "strongsum"
    assert manifest["output"] == "cos3.csv"
    assert manifest["config"]["degree"] == 4
    assert manifest["exit_code"] == 0


def test_missing_output_directory(runner, tmp_path):
    out = tmp_path / "nowhere" / "a.csv"
    result = runner.invoke(cli, ["coeffs", "--function", "cos", "--degree", "4", "--out", str(out), "--no-record"])
    assert result.exit_code == 2
    assert "output directory does not exist" in result.output


def test_invalid_configuration(runner):
    result = runner.invoke(cli, ["chars", "--function", "cos", "--p", "2", "--s", "2", "--no-record"])
    assert result.exit_code == 2
    assert "requires s > p" in result.output


def test_unknown_function(runner):
    result = runner.invoke(cli, ["coeffs", "--function", "triangle", "--degree", "4", "--no-record"])
    assert result.exit_code == 2
    assert "unknown function" in result.output


def test_config_file(runner, tmp_path):
    config = tmp_path / "run.conf"
    config.write_text("function = cos\ndegree = 3\nrecord = false\n")
    out = tmp_path / "cos.csv"
    result = runner.invoke(cli, ["coeffs", "--config", str(config), "--degree", "5", "--out", str(out)])
    assert result.exit_code == 0
    assert len(out.read_text().splitlines()) == 7


def test_verify_passes(runner, sweep_file, tmp_path):
    out = tmp_path / "pm.csv"
    result = runner.invoke(cli, ["verify-theorem", "PM", "--sweep", str(sweep_file), "--out", str(out), "--no-record"])
    assert result.exit_code == 0
    header = out.read_text().splitlines()[0]
    assert header.startswith("inequality_id,function,x,indices,q,qp,lhs,rhs,ratio,verdict")


def test_scaled_constant_fails(runner, sweep_file):
    result = runner.invoke(
        cli, ["verify-theorem", "PM", "--sweep", str(sweep_file), "--constant-scale", "0.5", "--no-record"]
    )
    assert result.exit_code == 1


def test_wrong_target_for_subcommand(runner, sweep_file):
    result = runner.invoke(cli, ["verify-lemma", "T1", "--sweep", str(sweep_file), "--no-record"])
    assert result.exit_code == 2


def test_hypothesis_violation_exits_2(runner, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"functions": ["cos"], "ps_pairs": [[2, 1]]}))
    result = runner.invoke(cli, ["verify-lemma", "L2", "--sweep", str(path), "--no-record"])
    assert result.exit_code == 2
    assert "L2: requires s > p >= 1" in result.output


def test_runs_are_deterministic(runner, tmp_path):
    args = ["means", "--function", "squarewave", "--x", "1.0", "--x", "0.5", "--indices", "arith:16", "--no-record"]
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    assert runner.invoke(cli, [*args, "--out", str(first)]).exit_code == 0
    assert runner.invoke(cli, [*args, "--out", str(second)]).exit_code == 0
    assert first.read_bytes() == second.read_bytes()


def test_means_header(runner):
    result = runner.invoke(
        cli, ["means", "--function", "cos", "--x", "0.0", "--indices", "arith:4", "--q", "2", "--no-record"]
    )
    assert result.exit_code == 0
    assert "function,x,indices,q,H" in result.output.splitlines()


def test_replay_reproduces_output(runner, sweep_file, tmp_path):
    out = tmp_path / "pm.csv"
    assert runner.invoke(
        cli, ["verify-theorem", "PM", "--sweep", str(sweep_file), "--out", str(out), "--no-record"]
    ).exit_code == 0
    replayed = tmp_path / "replayed.csv"
    result = runner.invoke(cli, ["replay", str(tmp_path / "pm.csv.manifest.json"), "--out", str(replayed)])
    assert result.exit_code == 0
    assert replayed.read_bytes() == out.read_bytes()


def test_recorded_runs_are_listed(runner, recorded, sweep_file):
    assert runner.invoke(cli, ["verify-theorem", "PM", "--sweep", str(sweep_file)]).exit_code == 0
    runs = recorded.get_recent_runs()
    assert len(runs) == 1
    assert runs[0].target == "PM"
    assert runs[0].sweep_name == str(sweep_file)
    assert runs[0].results[0].verdict == "LiteralPass"

    result = runner.invoke(cli, ["runs", "--limit", "5"])
    assert result.exit_code == 0
    assert "verify-theorem\tPM" in result.output


@pytest.fixture
def window_sweep_file(tmp_path):
    path = tmp_path / "windows.json"
    path.write_text(json.dumps({
        "functions": ["cos", "cos3"],
        "points": [0.0, 1.0],
        "ps_pairs": [[1, 2]],
        "delta_exponents": [1, 2, 3],
        "gamma_multipliers": [1, 2],
        "quad_cells": 64,
    }))
    return path


def test_subsampled_run_ignores_full_run_baseline(runner, recorded, window_sweep_file):
    args = ["verify-lemma", "L6", "--sweep", str(window_sweep_file)]
    assert runner.invoke(cli, args).exit_code == 0
    assert runner.invoke(cli, [*args, "--subsample", "12", "--seed", "1"]).exit_code == 0
    hashes = {run.sweep_hash for run in recorded.get_recent_runs()}
    assert len(hashes) == 2


def _stale_l6(ledger, sweep_file, sweep_hash):
    stale = {"inequality_id": "L6", "verdict": "BoundedRatio", "sup_ratio": 1000.0, "refinement_drift": 0.0,
             "configuration_count": 20, "constant_estimate": 1000.0}
    ledger.save_run("verify-lemma", {}, 0, 1.0, sweep_name=str(sweep_file), sweep_hash=sweep_hash, results=[stale])


def test_baseline_from_another_resolution_is_not_compared(runner, recorded, window_sweep_file):
    _stale_l6(recorded, window_sweep_file, "another-resolution")
    result = runner.invoke(cli, ["verify-lemma", "L6", "--sweep", str(window_sweep_file)])
    assert result.exit_code == 0


def test_baseline_on_the_same_sweep_is_compared(runner, recorded, window_sweep_file):
    _stale_l6(recorded, window_sweep_file, sweep_fingerprint(load_sweep(str(window_sweep_file))))
    result = runner.invoke(cli, ["verify-lemma", "L6", "--sweep", str(window_sweep_file)])
    assert result.exit_code == 1
    assert ",Fail," in result.output
