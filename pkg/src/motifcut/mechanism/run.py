# src/motifcut/mechanism/run.py

from __future__ import annotations
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Tuple
import logging
import time

import numpy as np

from motifcut.errors import (
    FeasibilityError,
    InfeasibleCapsError,
    MechanismError,
    ProjectionError,
    SdpSolverError,
)
from motifcut.graph.weighted import WeightedGraph
from motifcut.mechanism.gradient import estimate_gradient
from motifcut.mechanism.preprocess import PreprocessNoise, PreprocessedInstance, preprocess
from motifcut.mechanism.report import MechanismReport, graph_digest
from motifcut.mechanism.update import md_update
from motifcut.privacy.calibration import (
    MechanismParams,
    TuningConstants,
    calibrate,
    privacy_ledger,
    stage_budgets,
)
from motifcut.privacy.noise import NoiseStream
from motifcut.sdp.domain import SdpPoint, matrix_sqrt_psd
from motifcut.sdp.objective import SaddleContext, f_triangle
from motifcut.sdp.solver import SolverSettings, inner_sdp_solve

logger = logging.getLogger(__name__)

FEASIBILITY_RTOL = 1e-9
CAP_SLACK = 1e-12


@dataclass
class IterateState:
    """Mirror-descent state inside one restart."""
    t: int
    w: np.ndarray
    X: SdpPoint
    f_value: Optional[float] = None


@dataclass
class RestartNoise:
    """Noise of one restart: the reference-weight draws and the T sketches."""
    reference: np.ndarray
    zetas: np.ndarray


@dataclass
class MechanismNoise:
    """Pre-drawn noise for a whole run; replaces stream draws when given."""
    preprocess: PreprocessNoise
    restarts: List[RestartNoise] = field(default_factory=list)


def check_feasible(w: np.ndarray, W: float, u: np.ndarray) -> None:
    """Raise FeasibilityError unless sum w = W and 0 <= w <= u."""
    total = float(np.sum(w))
    if abs(total - W) > FEASIBILITY_RTOL * W:
        raise FeasibilityError(f"Iterate sums to {total!r}, expected {W!r}.")
    if np.any(w < 0.0):
        raise FeasibilityError("Iterate has negative weights.")
    excess = float(np.max(w - u)) if w.size else 0.0
    if excess > CAP_SLACK:
        raise FeasibilityError(f"Iterate exceeds its caps by {excess:.3e}.")


def _run_restart(
    index: int,
    inst: PreprocessedInstance,
    params: MechanismParams,
    stream: NoiseStream,
    settings: SolverSettings,
    noise: Optional[RestartNoise],
    trajectory: Dict[str, Any],
) -> Tuple[np.ndarray, SaddleContext]:
    n = inst.n
    N = inst.w_bar.size
    sub = stream.substream(index)

    if noise is None:
        nu = sub.laplace_vector(1.0 / params.eps4, N)
    else:
        nu = np.asarray(noise.reference, dtype=float)
    w_tilde = inst.w_bar + nu
    ctx = SaddleContext.build(inst.w_bar, w_tilde, inst.u, params.lam)
    trajectory["reference_noise_l1"] = float(np.sum(np.abs(nu)))

    state = IterateState(t=1, w=np.full(N, inst.W / N), X=SdpPoint.identity(n))
    total = np.zeros(N)
    for t in range(1, params.T + 1):
        state.t = t
        total += state.w
        solution = inner_sdp_solve(ctx.saddle_matrix(state.w), params.lam, settings, state.X)
        state.X = solution.point
        state.f_value = solution.objective + ctx.quadratic(state.w)

        if noise is None:
            zeta = sub.gaussian(2 * n)
        else:
            zeta = np.asarray(noise.zetas[t - 1], dtype=float)
        g = estimate_gradient(state.w, state.X, zeta, w_tilde, inst.u, root=matrix_sqrt_psd(state.X))
        state.w = md_update(state.w, g, inst.W, inst.u, params.eta)
        check_feasible(state.w, inst.W, inst.u)

        trajectory["f_values"].append(state.f_value)
        trajectory["solver_steps"].append(solution.steps)
        trajectory["gradient_norms"].append(float(np.linalg.norm(g)))
        logger.debug("restart %d step %d: f=%.6e, solver steps %d", index, t, state.f_value, solution.steps)

    return total / params.T, ctx


def run_mechanism(
    g_hat: WeightedGraph,
    epsilon: float,
    delta: float,
    beta: float,
    stream: NoiseStream,
    constants: TuningConstants = TuningConstants(),
    settings: SolverSettings = SolverSettings(),
    noise: Optional[MechanismNoise] = None,
    config: Optional[Dict[str, Any]] = None,
) -> Tuple[WeightedGraph, MechanismReport]:
    """Release a synthetic graph whose triangle-motif cuts track those of ``g_hat``.

    Degenerate inputs release the empty graph. Otherwise each of the L
    restarts runs T noisy mirror-descent steps from the uniform point; its
    candidate is the average iterate, scored by f with that restart's noisy
    reference weights, and the best-scoring candidate is released.

    Solver and feasibility failures are re-raised as MechanismError carrying
    the partial report.
    """
    if not epsilon > 0.0:
        raise ValueError(f"epsilon must be positive, got {epsilon!r}.")
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must be in (0, 1), got {delta!r}.")
    if not 0.0 < beta < 1.0:
        raise ValueError(f"beta must be in (0, 1), got {beta!r}.")

    started = time.perf_counter()
    eps1, eps2, eps3, _ = stage_budgets(epsilon, 1)
    inst = preprocess(
        g_hat, eps1, eps2, eps3, beta, stream, constants,
        noise=None if noise is None else noise.preprocess,
    )
    report = MechanismReport(
        seed=stream.seed,
        n=g_hat.n,
        epsilon=epsilon,
        delta=delta,
        beta=beta,
        input_digest=graph_digest(g_hat),
        degenerate=inst.degenerate,
        preprocess=inst.summary(),
        noise={"preprocess": inst.noise_record.to_dict()},
        config=dict(config or {}),
        solver=asdict(settings),
    )

    if inst.degenerate:
        out = WeightedGraph.empty(g_hat.n)
        report.final_weights = [float(x) for x in out.w]
        report.timing = {"wall_seconds": time.perf_counter() - started}
        logger.info("Degenerate input; releasing the empty graph.")
        return out, report

    params = calibrate(
        epsilon, delta, beta, inst.W, inst.U_tri, inst.U_lam, inst.l3_tilde, inst.n, constants,
    )
    report.params = params.to_dict()
    report.ledger = privacy_ledger(params)
    logger.info(
        "Calibrated T=%d, L=%d, lambda=%.3e, eta=%.3e.", params.T, params.L, params.lam, params.eta,
    )
    if noise is not None and len(noise.restarts) != params.L:
        raise ValueError(f"Injected noise covers {len(noise.restarts)} restarts, expected {params.L}.")

    candidates: List[Tuple[float, np.ndarray]] = []
    for index in range(params.L):
        trajectory: Dict[str, Any] = {
            "restart": index,
            "f_values": [],
            "solver_steps": [],
            "gradient_norms": [],
        }
        report.restarts.append(trajectory)
        try:
            w_avg, ctx = _run_restart(
                index, inst, params, stream, settings,
                None if noise is None else noise.restarts[index],
                trajectory,
            )
            value, _ = f_triangle(w_avg, ctx, settings)
        except (SdpSolverError, ProjectionError, FeasibilityError, InfeasibleCapsError) as exc:
            report.status = "failed"
            report.timing = {"wall_seconds": time.perf_counter() - started}
            raise MechanismError(f"restart {index} failed: {exc}", report) from exc
        trajectory["candidate_f"] = value
        candidates.append((value, w_avg))

    best = int(np.argmin([value for value, _ in candidates]))
    w_out = candidates[best][1]
    out = WeightedGraph(n=g_hat.n, w=w_out)
    report.selected_restart = best
    report.selected_f = candidates[best][0]
    report.final_weights = [float(x) for x in w_out]
    report.output_total_weight = out.total_weight
    report.timing = {"wall_seconds": time.perf_counter() - started}
    return out, report


def replay(report: MechanismReport, g_hat: WeightedGraph) -> bool:
    """Re-run from the seed, constants and solver settings in ``report``; True if the output matches bitwise."""
    if graph_digest(g_hat) != report.input_digest:
        raise ValueError("Input graph does not match the digest recorded in the report.")
    settings = SolverSettings(**report.solver) if report.solver else SolverSettings()
    constants = TuningConstants()
    if report.params is not None:
        constants = TuningConstants(**report.params["constants"])
    elif "constants" in report.config:
        constants = TuningConstants(**report.config["constants"])
    out, _ = run_mechanism(
        g_hat, report.epsilon, report.delta, report.beta, NoiseStream(report.seed), constants, settings,
    )
    return np.array_equal(out.w, np.asarray(report.final_weights, dtype=float))
