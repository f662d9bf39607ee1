import csv
import math

import numpy as np
import pytest

from motifcut.errors import FeasibilityError
from motifcut.graph.generate import gen_graph
from motifcut.graph.io import parse_graph, write_graph
from motifcut.graph.weighted import WeightedGraph
from motifcut.mechanism.baseline import randomized_response
from motifcut.mechanism.report import (
    SUMMARY_COLUMNS,
    MechanismReport,
    emit_report,
    load_report,
    report_json,
    write_summary_csv,
)
from motifcut.mechanism.run import check_feasible, replay, run_mechanism
from motifcut.privacy.noise import NoiseStream
from motifcut.sdp.solver import SolverSettings

# K6 with eps = 4 clears both fallback thresholds
EPSILON, DELTA, BETA = 4.0, 1e-6, 0.25


def small_run(seed: int = 0):
    g = gen_graph("complete", 6)
    out, report = run_mechanism(g, EPSILON, DELTA, BETA, NoiseStream(seed))
    return g, out, report


def test_empty_input_releases_empty_graph():
    out, report = run_mechanism(WeightedGraph.empty(8), 1.0, 1e-6, 0.25, NoiseStream(1))
    assert report.degenerate
    assert np.all(out.w == 0.0)
    assert report.params is None
    assert report.restarts == []


def test_release_is_feasible():
    g, out, report = small_run()
    assert not report.degenerate
    W = report.preprocess["W"]
    caps = np.asarray(report.preprocess["caps"])
    assert out.total_weight == pytest.approx(W, rel=1e-9)
    assert np.all(out.w >= 0.0)
    assert np.all(out.w <= caps + 1e-12)

    params = report.params
    assert len(report.restarts) == params["L"]
    assert all(len(r["f_values"]) == params["T"] for r in report.restarts)
    assert report.selected_restart in range(params["L"])
    assert report.selected_f == min(r["candidate_f"] for r in report.restarts)
    assert report.ledger[-1]["mechanism"] == "composition"
    assert report.ledger[-1]["epsilon_allocated"] == pytest.approx(EPSILON)
    assert out.n == g.n


def test_runs_are_replayable():
    g, out, report = small_run(seed=3)
    _, second = run_mechanism(g, EPSILON, DELTA, BETA, NoiseStream(3))
    assert report_json(report, include_timing=False) == report_json(second, include_timing=False)
    assert replay(report, g)

    with pytest.raises(ValueError):
        replay(report, gen_graph("complete", 6).scaled(2.0))


def test_report_round_trip(tmp_path):
    g, out, report = small_run(seed=1)
    path = tmp_path / "report.json"
    emit_report(report, path)
    loaded = load_report(path)
    assert loaded.to_dict() == report.to_dict()
    np.testing.assert_array_equal(loaded.output_graph().w, out.w)

    with pytest.raises(ValueError):
        MechanismReport.from_dict({**report.to_dict(), "extra": 1})


def test_summary_csv_has_stable_columns(tmp_path):
    _, _, report = small_run(seed=2)
    _, empty = run_mechanism(WeightedGraph.empty(6), 1.0, 1e-6, 0.25, NoiseStream(2))
    path = tmp_path / "summary.csv"
    write_summary_csv([report, empty], path)
    with path.open() as f:
        rows = list(csv.DictReader(f))
    assert tuple(rows[0].keys()) == SUMMARY_COLUMNS
    assert len(rows) == 2
    assert rows[1]["degenerate"] == "True"
    assert rows[1]["T"] == ""

    emit_report(report, tmp_path / "one.csv", fmt="csv")
    with pytest.raises(ValueError):
        emit_report(report, tmp_path / "bad.txt", fmt="xml")


def test_released_graph_written_and_read_back(tmp_path):
    _, out, _ = small_run(seed=4)
    path = tmp_path / "released.txt"
    write_graph(out, path)
    np.testing.assert_array_equal(parse_graph(path).w, out.w)


def test_check_feasible():
    u = np.array([1.0, 1.0, 1.0])
    check_feasible(np.array([0.5, 0.5, 1.0]), 2.0, u)
    with pytest.raises(FeasibilityError):
        check_feasible(np.array([0.5, 0.5, 0.5]), 2.0, u)
    with pytest.raises(FeasibilityError):
        check_feasible(np.array([0.2, 0.3, 1.5]), 2.0, u)


def test_invalid_budgets():
    g = gen_graph("complete", 5)
    with pytest.raises(ValueError):
        run_mechanism(g, 0.0, 1e-6, 0.25, NoiseStream(0))
    with pytest.raises(ValueError):
        run_mechanism(g, 1.0, 0.0, 0.25, NoiseStream(0))


def test_randomized_response_with_zero_draws_is_identity():
    g = gen_graph("gnp", 6, p=0.5, seed=0)
    out = randomized_response(g, 1.0, noise=np.zeros(g.num_pairs))
    np.testing.assert_array_equal(out.w, g.w)


def test_randomized_response_sign_handling():
    g = WeightedGraph.empty(5)
    noise = np.linspace(-1.0, 1.0, 10)
    signed = randomized_response(g, 1.0, noise=noise)
    assert signed.signed
    assert signed.w.min() == -1.0
    clipped = randomized_response(g, 1.0, noise=noise, clip=True)
    assert clipped.w.min() == 0.0

    a = randomized_response(g, 2.0, NoiseStream(9))
    b = randomized_response(g, 2.0, NoiseStream(9))
    np.testing.assert_array_equal(a.w, b.w)


def test_randomized_response_noise_has_laplace_tails():
    g = gen_graph("complete", 120)
    epsilon = 2.0
    noise = np.concatenate(
        [randomized_response(g, epsilon, NoiseStream(seed)).w - g.w for seed in range(8)]
    )
    b = 1.0 / epsilon
    for t in (0.5, 1.0, 2.0, 3.0):
        p = math.exp(-t)
        observed = float(np.mean(np.abs(noise) >= t * b))
        sigma = math.sqrt(p * (1.0 - p) / noise.size)
        assert abs(observed - p) <= 3.0 * sigma, (t, observed, p)


GNP_RUNS = [(12, 2.0, seed) for seed in range(1, 21)] + [
    (12, 4.0, 2),
    (12, 4.0, 5),
    (12, 4.0, 7),
    (10, 2.0, 11),
    (14, 2.0, 3),
]


@pytest.mark.parametrize("n, epsilon, seed", GNP_RUNS)
def test_gnp_releases_complete_and_stay_feasible(n, epsilon, seed):
    g = gen_graph("gnp", n, p=0.5, seed=seed)
    out, report = run_mechanism(g, epsilon, 1e-6, 0.25, NoiseStream(seed))
    assert report.status == "ok"
    assert out.n == n
    if report.degenerate:
        assert np.all(out.w == 0.0)
        return
    caps = np.asarray(report.preprocess["caps"])
    assert out.total_weight == pytest.approx(report.preprocess["W"], rel=1e-9)
    assert np.all(out.w >= 0.0)
    assert np.all(out.w <= caps + 1e-12)
    assert len(report.restarts) == report.params["L"]


def test_replay_uses_recorded_solver_settings():
    g = gen_graph("complete", 6)
    settings = SolverSettings(tol=1e-7, stall_steps=3)
    out, report = run_mechanism(g, EPSILON, DELTA, BETA, NoiseStream(6), settings=settings)
    assert report.solver["tol"] == 1e-7
    assert report.solver["stall_steps"] == 3
    assert SolverSettings(**report.solver) == settings
    assert replay(report, g)
