import json

import pytest

from run_experiment import build_experiment, parse_args

# fixtures

def tiny_config(tmp_path):
    config = tmp_path / "tiny.json"
    config.write_text(json.dumps({"p_max": 6, "filter": "all", "oracle_limit": 6, "processes": 1}))
    return str(config)

# tests

def test_sweep_run(tmp_path):
    runs_dir = tmp_path / "runs"
    args = parse_args(["--config", tiny_config(tmp_path), "--experiment_name", "tiny", "--runs_dir", str(runs_dir)])
    run = build_experiment(args).run()
    assert run.result["emitted"] == 1 + 4 + 4 + 16 + 4
    assert run.result["failed_checks"] == {}

    run_dir = runs_dir / str(run._id)
    assert (run_dir / "catalog_tiny.jsonl").exists()
    metrics = json.loads((run_dir / "metrics.json").read_text())
    assert metrics["emitted"]["values"] == [29]


def test_scan_run(tmp_path):
    runs_dir = tmp_path / "runs"
    args = parse_args(["--config", tiny_config(tmp_path), "--experiment_name", "tiny", "--runs_dir", str(runs_dir),
                       "--scan"])
    run = build_experiment(args).run()
    assert run.result["violations"] == 0
    assert (runs_dir / str(run._id) / "scan_w1.json").exists()


def test_processes_must_be_plain_integer(tmp_path):
    base = ["--config", tiny_config(tmp_path), "--experiment_name", "tiny"]
    assert parse_args(base + ["--processes", "0"]).processes == 0
    for bad in ("2.0", "1_0", "two"):
        with pytest.raises(SystemExit) as excinfo:
            parse_args(base + ["--processes", bad])
        assert excinfo.value.code == 2
