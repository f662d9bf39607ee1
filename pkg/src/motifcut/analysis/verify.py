# src/motifcut/analysis/verify.py

from __future__ import annotations
from dataclasses import dataclass
from typing import Callable, List, Tuple
import logging
import math
import time

import numpy as np

from motifcut.analysis.cut_error import max_cut_error, randomized_response_envelope
from motifcut.analysis.gradcheck import exact_gradient, f_value_function, finite_difference_gradient
from motifcut.analysis.oracles import brute_force_md_oracle, kkt_check, sdp_oracle_small
from motifcut.graph.generate import gen_graph
from motifcut.graph.motif import (
    local_sensitivity_l3,
    total_triangle_weight,
    triangle_cut_bipartition,
    triangle_cut_general,
)
from motifcut.graph.weighted import CutSpec, WeightedGraph, num_pairs
from motifcut.mechanism.baseline import randomized_response
from motifcut.mechanism.gradient import estimate_gradient
from motifcut.mechanism.report import report_json
from motifcut.mechanism.run import run_mechanism
from motifcut.mechanism.update import capped_entropic_projection
from motifcut.privacy.calibration import calibrate
from motifcut.privacy.noise import NoiseStream
from motifcut.sdp.domain import matrix_sqrt_psd
from motifcut.sdp.objective import SaddleContext
from motifcut.sdp.solver import SolverSettings, inner_sdp_solve, sdp_objective

logger = logging.getLogger(__name__)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0


def random_caps_instance(rng: np.random.Generator) -> Tuple[np.ndarray, float, np.ndarray]:
    """Random (log y, W, u) with sum u >= W, mixing slack and tight cap regimes."""
    N = int(rng.integers(2, 13))
    log_y = 2.0 * rng.standard_normal(N)
    W = float(rng.uniform(0.5, 10.0))
    u = rng.uniform(0.05, 1.0, N)
    slack = float(rng.choice([1.0, 1.0 + 1e-3, 1.2, 2.0, 5.0]))
    u *= slack * W / u.sum()
    return log_y, W, u


def check_md_update(trials: int, seed: int) -> Tuple[bool, str]:
    rng = np.random.default_rng(seed)
    worst_gap = 0.0
    failures = 0
    for _ in range(trials):
        log_y, W, u = random_caps_instance(rng)
        w = capped_entropic_projection(log_y, W, u)
        oracle = brute_force_md_oracle(np.exp(log_y), W, u)
        worst_gap = max(worst_gap, float(np.max(np.abs(w - oracle))) / max(1.0, W))
        if not kkt_check(w, np.exp(log_y), W, u, tol=1e-8).ok:
            failures += 1
    passed = worst_gap <= 1e-8 and failures == 0
    return passed, f"{trials} instances, max |sweep - oracle| {worst_gap:.2e}, KKT failures {failures}"


def random_weighted_graph(rng: np.random.Generator, n: int, unit: bool) -> WeightedGraph:
    present = rng.random(num_pairs(n)) < 0.7
    weights = np.ones(num_pairs(n)) if unit else rng.uniform(0.1, 3.0, num_pairs(n))
    return WeightedGraph(n=n, w=np.where(present, weights, 0.0))


def check_cut_identity(graphs: int, max_n: int, seed: int) -> Tuple[bool, str]:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for k in range(graphs):
        n = int(rng.integers(3, max_n + 1))
        g = random_weighted_graph(rng, n, unit=bool(k % 2))
        for mask in range(1, 1 << (n - 1)):
            S = [v for v in range(n - 1) if mask >> v & 1]
            fast = triangle_cut_bipartition(g, S)
            slow = triangle_cut_general(g, CutSpec.bipartition(S, n))
            worst = max(worst, abs(fast - slow) / max(1.0, abs(slow)))
    return worst <= 1e-12, (
        f"{graphs} graphs, max gap {worst:.2e} (absolute for |cut| <= 1, relative to |cut| above)"
    )


def random_saddle_context(rng: np.random.Generator, n: int, lam: float) -> Tuple[np.ndarray, SaddleContext]:
    """A point w and a context whose target and reference sit near it."""
    N = num_pairs(n)
    w_bar = rng.uniform(0.2, 1.0, N)
    w_tilde = w_bar + 0.1 * rng.standard_normal(N)
    u = w_bar + 0.5
    w = w_bar * (1.0 + 0.3 * rng.uniform(-1.0, 1.0, N))
    return w, SaddleContext.build(w_bar, w_tilde, u, lam)


def check_gradient_formula(instances: int, seed: int) -> Tuple[bool, str]:
    rng = np.random.default_rng(seed)
    settings = SolverSettings(tol=1e-8)
    worst = 0.0
    for _ in range(instances):
        n = int(rng.integers(4, 7))
        w, ctx = random_saddle_context(rng, n, lam=float(rng.uniform(0.5, 2.0)))
        X = inner_sdp_solve(ctx.saddle_matrix(w), ctx.lam, settings).point
        exact = exact_gradient(w, ctx, settings, X=X)
        fd = finite_difference_gradient(f_value_function(ctx, settings, warm_start=X), w, h=1e-4)
        rel = np.abs(fd - exact) / np.maximum(np.abs(exact), 1.0)
        worst = max(worst, float(rel.max()))
    return worst <= 1e-4, f"{instances} instances, max relative error {worst:.2e}"


def check_gradient_unbiased(samples: int, seed: int, instances: int = 3) -> Tuple[bool, str]:
    """Monte Carlo mean of the sketch gradient against the exact gradient.

    Each coordinate must fall within 3 standard errors of the exact value.
    """
    rng = np.random.default_rng(seed)
    stream = NoiseStream(seed)
    settings = SolverSettings(tol=1e-8)
    n = 5
    eps4 = 1.0
    worst = 0.0
    chunk = 10_000
    for _ in range(instances):
        w, ctx = random_saddle_context(rng, n, lam=1.0)
        # the reference is w_bar + nu, so the exact gradient uses w_bar
        w_bar = ctx.reference_weights.copy()
        exact_ctx = SaddleContext(ctx.n, ctx.target, w_bar, ctx.caps, ctx.lam, ctx.rho)
        X = inner_sdp_solve(exact_ctx.saddle_matrix(w), ctx.lam, settings).point
        exact = exact_gradient(w, exact_ctx, settings, X=X)
        root = matrix_sqrt_psd(X)

        total = np.zeros_like(w)
        total_sq = np.zeros_like(w)
        drawn = 0
        while drawn < samples:
            rows = min(chunk, samples - drawn)
            zeta = stream.gaussian(2 * n, rows=rows)
            nu = stream.laplace_vector(1.0 / eps4, rows * w.size).reshape(rows, w.size)
            g = estimate_gradient(w, X, zeta, w_bar + nu, ctx.caps, root=root)
            total += g.sum(axis=0)
            total_sq += (g * g).sum(axis=0)
            drawn += rows
        mean = total / samples
        var = np.maximum(total_sq / samples - mean * mean, 0.0)
        stderr = np.sqrt(var / samples)
        z = np.abs(mean - exact) / np.maximum(stderr, 1e-12)
        worst = max(worst, float(z.max()))
    return worst <= 3.0, f"{instances} instances x {samples} draws, max |z| {worst:.2f} (bound 3)"


def check_inner_sdp(instances: int, restarts: int, seed: int) -> Tuple[bool, str]:
    rng = np.random.default_rng(seed)
    settings = SolverSettings(tol=1e-8)
    worst_gap = 0.0
    worst_res = 0.0
    for k in range(instances):
        A = rng.standard_normal((4, 4))
        M = 0.5 * (A + A.T)
        lam = float(rng.uniform(0.5, 2.0))
        solution = inner_sdp_solve(M, lam, settings)
        oracle = sdp_oracle_small(M, lam, restarts=restarts, seed=seed + k)
        g_oracle = sdp_objective(M, lam, oracle)
        worst_gap = max(worst_gap, (g_oracle - solution.objective) / (1.0 + abs(g_oracle)))
        point = solution.point
        diag_res, spec_res = point.residuals()
        evals = point.eigenvalues()
        worst_res = max(
            worst_res,
            diag_res,
            spec_res,
            float(np.max(np.abs(point.X))) - 1.0,
            float(evals[-1]) - 2 * point.n,
        )
    passed = worst_gap <= 1e-4 and worst_res <= 1e-7
    return passed, f"{instances} instances, max objective gap {worst_gap:.2e}, max residual {worst_res:.2e}"


def check_local_sensitivity(graphs: int, seed: int) -> Tuple[bool, str]:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for k in range(graphs):
        n = int(rng.integers(3, 8))
        g = random_weighted_graph(rng, n, unit=bool(k % 2))
        brute = 0.0
        for e in range(g.num_pairs):
            for sign in (1.0, -1.0):
                w = g.w.copy()
                w[e] += sign
                h = WeightedGraph(n=n, w=w, signed=True)
                brute = max(brute, max_cut_error(g, h).max_error)
        worst = max(worst, abs(brute - local_sensitivity_l3(g)))
    return worst <= 1e-9, f"{graphs} graphs, max gap {worst:.2e}"


def check_calibration() -> Tuple[bool, str]:
    p = calibrate(6.0, 1e-3, 0.3, 100.0, 10.0, 5.0, 2.0, 10)
    q = calibrate(1.0, 1e-3, 0.3, 100.0, 10.0, 5.0, 2.0, 10)
    budget = q.eps1 + q.eps2 + q.eps3 + q.L * q.eps4
    passed = p.L == 3 and math.isclose(p.eps4, 1.0 / 3.0) and q.T == 8 and abs(budget - 2.0 / 3.0) <= 1e-12
    return passed, f"L={p.L}, eps4={p.eps4:.6f}, T={q.T}, budget {budget:.15f}"


def check_end_to_end(seeds: List[int]) -> Tuple[bool, str]:
    problems: List[str] = []
    mech_errors: List[float] = []
    rr_errors: List[float] = []
    for seed in seeds:
        g = gen_graph("gnp", 12, p=0.5, seed=seed)
        out, report = run_mechanism(g, 2.0, 1e-6, 0.25, NoiseStream(seed))
        if report.degenerate:
            if np.any(out.w != 0.0):
                problems.append(f"seed {seed}: degenerate run released edges")
            continue
        W = report.preprocess["W"]
        u = np.asarray(report.preprocess["caps"])
        if abs(out.total_weight - W) > 1e-9 * W or np.any(out.w > u + 1e-12):
            problems.append(f"seed {seed}: output infeasible")
        mech_errors.append(max_cut_error(g, out).max_error)
        rr = randomized_response(g, 2.0, NoiseStream(seed))
        rr_errors.append(max_cut_error(g, rr).max_error)

    empty, _ = run_mechanism(WeightedGraph.empty(12), 2.0, 1e-6, 0.25, NoiseStream(0))
    if np.any(empty.w != 0.0):
        problems.append("empty input released edges")
    sparse = WeightedGraph.from_edges(12, [(0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0)])
    out, report = run_mechanism(sparse, 2.0, 1e-6, 0.25, NoiseStream(0))
    if not report.degenerate or np.any(out.w != 0.0):
        problems.append("low-sensitivity input did not fall back to the empty graph")
    if total_triangle_weight(sparse) > sparse.total_weight * local_sensitivity_l3(sparse) + 1e-12:
        problems.append("total triangle weight exceeds W * l3")

    detail = f"{len(seeds)} seeds, {len(mech_errors)} non-degenerate"
    if mech_errors:
        detail += (
            f", median max-cut error {float(np.median(mech_errors)):.3f} "
            f"(randomized response {float(np.median(rr_errors)):.3f})"
        )
    if problems:
        detail += "; " + "; ".join(problems)
    return not problems, detail


def check_rr_envelope(seeds: List[int]) -> Tuple[bool, str]:
    n, eps, beta = 16, 1.0, 0.25
    envelope = randomized_response_envelope(n, eps, beta)
    worst = 0.0
    for seed in seeds:
        g = gen_graph("gnp", n, p=0.5, seed=seed)
        rr = randomized_response(g, eps, NoiseStream(seed))
        worst = max(worst, max_cut_error(g, rr).max_error / envelope)
    return worst < 10.0, f"{len(seeds)} seeds, max error / envelope {worst:.4f}"


def check_replay(seed: int) -> Tuple[bool, str]:
    g = gen_graph("gnp", 8, p=0.7, seed=seed)
    _, first = run_mechanism(g, 4.0, 1e-3, 0.3, NoiseStream(seed))
    _, second = run_mechanism(g, 4.0, 1e-3, 0.3, NoiseStream(seed))
    same = report_json(first, include_timing=False) == report_json(second, include_timing=False)
    return same, "reports identical" if same else "reports differ"


def _timed(name: str, check: Callable[[], Tuple[bool, str]]) -> CheckResult:
    start = time.perf_counter()
    try:
        passed, detail = check()
    except (ValueError, RuntimeError) as exc:
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    seconds = time.perf_counter() - start
    logger.info("%s: %s (%s, %.1f s)", name, "ok" if passed else "FAILED", detail, seconds)
    return CheckResult(name=name, passed=passed, detail=detail, seconds=seconds)


def run_suite(quick: bool = True, seed: int = 0) -> List[CheckResult]:
    """Run every invariant check; ``quick`` shrinks instance counts for CI."""
    if quick:
        sizes = dict(md=200, cut_graphs=10, cut_n=7, fd=3, mc=20_000, sdp=10, restarts=8,
                     l3=5, e2e=list(range(1, 4)), rr=list(range(1, 3)))
    else:
        sizes = dict(md=1000, cut_graphs=50, cut_n=10, fd=20, mc=100_000, sdp=50, restarts=50,
                     l3=30, e2e=list(range(1, 21)), rr=list(range(1, 21)))

    checks = [
        ("md_update matches dual bisection", lambda: check_md_update(sizes["md"], seed)),
        ("bipartition cut equals triple enumeration",
         lambda: check_cut_identity(sizes["cut_graphs"], sizes["cut_n"], seed)),
        ("exact gradient matches finite differences", lambda: check_gradient_formula(sizes["fd"], seed)),
        ("sketch gradient is unbiased", lambda: check_gradient_unbiased(sizes["mc"], seed)),
        ("inner SDP matches reference maximizer",
         lambda: check_inner_sdp(sizes["sdp"], sizes["restarts"], seed)),
        ("l3 equals brute-force local sensitivity", lambda: check_local_sensitivity(sizes["l3"], seed)),
        ("calibration worked values", check_calibration),
        ("end-to-end feasibility and fallback", lambda: check_end_to_end(sizes["e2e"])),
        ("randomized-response envelope", lambda: check_rr_envelope(sizes["rr"])),
        ("replay is deterministic", lambda: check_replay(seed)),
    ]
    return [_timed(name, check) for name, check in checks]
