import csv
import json
import math
import sys
from pathlib import Path

import numpy as np
import pytest

from motifcut import cli_baseline, cli_eval, cli_gen, cli_run
from motifcut.config import EXIT_CONFIG, EXIT_INPUT, RunConfig, parse_seeds, worker_count
from motifcut.graph.io import parse_graph

DATA_DIR = Path(__file__).parent / "data"


def test_parse_seeds():
    assert parse_seeds("1..5") == [1, 2, 3, 4, 5]
    assert parse_seeds("3,5,7") == [3, 5, 7]
    assert parse_seeds("9") == [9]
    for bad in ("5..1", "a..b", "", "1,x"):
        with pytest.raises(ValueError):
            parse_seeds(bad)


def test_worker_count_respects_environment(monkeypatch):
    monkeypatch.setenv("MOTIFCUT_THREADS", "2")
    assert worker_count(10) == 2
    assert worker_count(1) == 1
    monkeypatch.setenv("MOTIFCUT_THREADS", "0")
    with pytest.raises(ValueError):
        worker_count(4)
    monkeypatch.setenv("MOTIFCUT_THREADS", "many")
    with pytest.raises(ValueError):
        worker_count(4)


def test_run_config_validation_and_round_trip():
    config = RunConfig(subcommand="run", epsilon=1.0, delta=1e-6, beta=0.25, seeds=[1, 2])
    assert RunConfig.from_dict(config.to_dict()) == config
    assert config.tuning_constants().c_T == 1.0

    for kwargs in (
        dict(subcommand="plot"),
        dict(subcommand="run", epsilon=-1.0),
        dict(subcommand="run", beta=1.0),
        dict(subcommand="run", fmt="yaml"),
        dict(subcommand="run", constants={"c_T": 0.0}),
    ):
        with pytest.raises(ValueError):
            RunConfig(**kwargs)
    with pytest.raises(ValueError):
        RunConfig.from_dict({"subcommand": "run", "colour": "red"})


def run_cli(monkeypatch, module, argv):
    monkeypatch.setattr(sys, "argv", [module.TAG] + [str(a) for a in argv])
    module.main()


def test_gen_then_eval(monkeypatch, tmp_path, capsys):
    graph = tmp_path / "g.txt"
    run_cli(monkeypatch, cli_gen, ["--model", "gnp", "--n", 7, "--p", 0.5, "--seed", 1, "-o", graph])
    g = parse_graph(graph)
    assert g.n == 7

    out = tmp_path / "eval.json"
    run_cli(monkeypatch, cli_eval, [graph, graph, "--sweep", "gray", "-o", out])
    summary = json.loads(out.read_text())
    assert summary["max_cut_error"] == 0.0
    assert summary["evaluated_cuts"] == 63
    assert "max cut error" in capsys.readouterr().out


def test_eval_reports_vertex_count_mismatch(monkeypatch):
    with pytest.raises(SystemExit) as info:
        run_cli(monkeypatch, cli_eval, [DATA_DIR / "k3.txt", DATA_DIR / "k4.txt"])
    assert info.value.code == EXIT_CONFIG


def test_bad_input_file_exit_code(monkeypatch, tmp_path):
    with pytest.raises(SystemExit) as info:
        run_cli(monkeypatch, cli_run, [DATA_DIR / "duplicate_pair.txt", "--eps", 1.0, "--outdir", tmp_path])
    assert info.value.code == EXIT_INPUT

    with pytest.raises(SystemExit) as info:
        run_cli(monkeypatch, cli_run, [DATA_DIR / "k4.txt", "--eps", -1.0, "--outdir", tmp_path])
    assert info.value.code == EXIT_CONFIG


def test_run_writes_seed_folders(monkeypatch, tmp_path):
    monkeypatch.setenv("MOTIFCUT_THREADS", "1")
    outdir = tmp_path / "runs"
    run_cli(monkeypatch, cli_run, [DATA_DIR / "k4.txt", "--eps", 1.0, "--seeds", "1,2", "--outdir", outdir])
    for seed in (1, 2):
        report = json.loads((outdir / f"seed_{seed}" / "report.json").read_text())
        assert report["seed"] == seed
        assert report["config"]["seeds"] == [1, 2]
        released = parse_graph(outdir / f"seed_{seed}" / "released.txt")
        assert released.n == 4
    with (outdir / "summary.csv").open() as f:
        assert len(list(csv.DictReader(f))) == 2


def test_baseline_writes_summary(monkeypatch, tmp_path):
    outdir = tmp_path / "rr"
    run_cli(monkeypatch, cli_baseline, [DATA_DIR / "k4.txt", "--eps", 2.0, "--seeds", "0..2", "--outdir", outdir])
    with (outdir / "summary.csv").open() as f:
        rows = list(csv.DictReader(f))
    assert [int(r["seed"]) for r in rows] == [0, 1, 2]
    assert all(float(r["ratio"]) >= 0.0 for r in rows)
    released = parse_graph(outdir / "seed_0" / "released.txt", allow_negative=True)
    assert np.all(np.isfinite(released.w))


@pytest.mark.parametrize(
    "module, extra",
    [
        (cli_run, ["--eps", 4.0, "--cut-mode", "sampled"]),
        (cli_run, ["--eps", 4.0, "--cut-mode", "sampled:8"]),
        (cli_baseline, ["--eps", 2.0, "--cut-mode", "sampled:100"]),
    ],
)
def test_sample_count_above_bipartition_count_is_a_config_error(monkeypatch, tmp_path, module, extra):
    outdir = tmp_path / "out"
    with pytest.raises(SystemExit) as info:
        run_cli(monkeypatch, module, [DATA_DIR / "k4.txt", *extra, "--outdir", outdir])
    assert info.value.code == EXIT_CONFIG
    assert not outdir.exists()


def test_sample_count_up_to_bipartition_count_is_accepted(monkeypatch, tmp_path):
    outdir = tmp_path / "rr"
    run_cli(monkeypatch, cli_baseline, [DATA_DIR / "k4.txt", "--eps", 2.0, "--cut-mode", "sampled:7", "--outdir", outdir])
    with (outdir / "summary.csv").open() as f:
        rows = list(csv.DictReader(f))
    assert len(rows) == 1
    assert float(rows[0]["max_cut_error"]) >= 0.0


def test_run_reports_utility_bound_next_to_error(monkeypatch, tmp_path):
    monkeypatch.setenv("MOTIFCUT_THREADS", "1")
    outdir = tmp_path / "runs"
    run_cli(monkeypatch, cli_run, [DATA_DIR / "k4.txt", "--eps", 1.0, "--seed", 3, "--outdir", outdir])
    report = json.loads((outdir / "seed_3" / "report.json").read_text())
    metrics = report["metrics"]
    # K4: total weight 6, l3 2, w_max 1
    expected = math.sqrt(6.0 * 2.0) * 4 * math.log(4 / (1e-6 * 0.25)) ** 2
    assert metrics["utility_bound"] == pytest.approx(expected, rel=1e-12)
    assert metrics["error_to_bound"] == pytest.approx(metrics["max_cut_error"] / expected, rel=1e-12)
    with (outdir / "summary.csv").open() as f:
        row = next(csv.DictReader(f))
    assert float(row["utility_bound"]) == pytest.approx(expected, rel=1e-9)
