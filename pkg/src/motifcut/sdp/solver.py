# src/motifcut/sdp/solver.py

from __future__ import annotations
from dataclasses import dataclass
from typing import Optional, Tuple
import logging
import math

import numpy as np
import scipy.linalg as la

from motifcut.errors import ProjectionError, SdpSolverError
from motifcut.sdp.domain import SdpPoint, project_domain

logger = logging.getLogger(__name__)

MACHINE_EPS = float(np.finfo(float).eps)
# rounding error of g, in units of machine epsilon times the size of its terms
ROUNDING_FACTOR = 16.0


@dataclass(frozen=True)
class SolverSettings:
    """Knobs of the inner maximization over the SDP domain.

    ``tol`` is relative: the solver stops once the projected-gradient norm
    falls below tol * (1 + |g|), or below the level at which a step gains
    less than the rounding error of g. ``projection_tol`` bounds the domain
    residuals of every returned point.
    """
    tol: float = 1e-6
    projection_tol: float = 1e-7
    max_steps: int = 2000
    max_sweeps: int = 500
    max_backtracks: int = 60
    stall_steps: int = 5

    def __post_init__(self) -> None:
        if self.tol <= 0.0 or self.projection_tol <= 0.0:
            raise ValueError("Solver tolerances must be positive.")
        if self.max_steps < 1 or self.max_sweeps < 1:
            raise ValueError("Solver iteration caps must be at least 1.")


@dataclass
class SdpSolution:
    """Result of :func:`inner_sdp_solve`."""
    point: SdpPoint
    objective: float
    steps: int
    stationarity: float


def sdp_objective(M: np.ndarray, lam: float, X: SdpPoint | np.ndarray) -> float:
    """g(X) = M . X + lam * log det X."""
    A = X.X if isinstance(X, SdpPoint) else np.asarray(X, dtype=float)
    evals = la.eigvalsh(A)
    if evals[0] <= 0.0:
        raise ValueError(f"log det undefined: smallest eigenvalue {evals[0]:.3e}.")
    return float(np.sum(M * A) + lam * np.sum(np.log(evals)))


def _value_and_inverse(
    M: np.ndarray, lam: float, X: np.ndarray
) -> Tuple[float, np.ndarray, float, float]:
    """g(X), X^{-1}, lambda_min(X) and the rounding error of g, from one eigendecomposition.

    The error bound is eps * (sum |M_ij X_ij| + lam sum |ln lambda_i| + lam dim):
    the eigensolver perturbs every eigenvalue by about eps lambda_max, which
    moves lam ln lambda_i by about eps lam near X = I.
    """
    evals, evecs = la.eigh(X)
    if evals[0] <= 0.0:
        return -math.inf, np.full_like(X, np.nan), float(evals[0]), math.inf
    linear = M * X
    logs = np.log(evals)
    value = float(np.sum(linear) + lam * np.sum(logs))
    magnitude = float(np.sum(np.abs(linear))) + lam * (float(np.sum(np.abs(logs))) + X.shape[0])
    inverse = (evecs / evals) @ evecs.T
    return value, 0.5 * (inverse + inverse.T), float(evals[0]), ROUNDING_FACTOR * MACHINE_EPS * magnitude


def _check_inputs(M: np.ndarray, lam: float) -> np.ndarray:
    if not lam > 0.0:
        raise ValueError(f"lambda must be positive, got {lam!r}.")
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] % 2 or M.shape[0] == 0:
        raise ValueError(f"Expected an even-sized square matrix, got shape {M.shape}.")
    if not np.all(np.isfinite(M)):
        raise ValueError("Objective matrix must be finite.")
    if not np.allclose(M, M.T, rtol=0.0, atol=1e-10 * max(1.0, float(np.max(np.abs(M))))):
        raise ValueError("Objective matrix must be symmetric.")
    return 0.5 * (M + M.T)


def inner_sdp_solve(
    M: np.ndarray,
    lam: float,
    settings: SolverSettings = SolverSettings(),
    warm_start: Optional[SdpPoint] = None,
) -> SdpSolution:
    """Maximize g(X) = M . X + lam log det X over {X_ii = 1, X >= I/n}.

    Projected gradient ascent with gradient M + lam X^{-1}. Step lengths
    start from the Barzilai-Borwein estimate and are halved until the
    sufficient-ascent test

        g(X+) >= g(X) + <grad, X+ - X> - |X+ - X|^2 / (2 t)

    holds together with g(X+) >= g(X). The solve stops when the gradient
    mapping |X+ - X| / t drops below tol * (1 + |g|) + sqrt(2 r / t), where r
    is the rounding error of g, or when ``stall_steps`` consecutive accepted
    steps each gain less than max(1e-3 * tol * (1 + |g|), r). A line search
    whose best trial loses no more than r also ends the solve, at working
    precision.
    """
    M = _check_inputs(M, lam)
    dim = M.shape[0]
    n = dim // 2
    proj_tol = min(settings.projection_tol, 1e-10)

    if warm_start is None:
        X = np.eye(dim)
    else:
        if warm_start.X.shape != (dim, dim):
            raise ValueError(
                f"Warm start has shape {warm_start.X.shape}, expected {(dim, dim)}."
            )
        X = project_domain(warm_start.X, tol=proj_tol, max_sweeps=settings.max_sweeps).X

    g, X_inv, lam_min, rounding = _value_and_inverse(M, lam, X)
    grad = M + lam * X_inv
    # inverse of the log-det curvature bound lam / lambda_min^2
    t_next = lam_min ** 2 / lam
    stationarity = math.inf
    stalled = 0

    for step in range(1, settings.max_steps + 1):
        t = t_next
        # below this a step of length t gains less than the rounding error of g
        threshold = settings.tol * (1.0 + abs(g)) + math.sqrt(2.0 * rounding / t)
        accepted = False
        best_loss = math.inf
        for _ in range(settings.max_backtracks):
            try:
                candidate = project_domain(X + t * grad, tol=proj_tol, max_sweeps=settings.max_sweeps).X
            except ProjectionError:
                t *= 0.5
                continue
            D = candidate - X
            stationarity = float(np.linalg.norm(D)) / t
            if stationarity <= threshold:
                logger.debug("Inner SDP converged after %d steps (g=%.6e).", step, g)
                return SdpSolution(SdpPoint(n=n, X=X), g, step, stationarity)

            g_new, X_inv_new, _, rounding_new = _value_and_inverse(M, lam, candidate)
            model = g + float(np.sum(grad * D)) - float(np.sum(D * D)) / (2.0 * t)
            if g_new >= model and g_new >= g:
                accepted = True
                break
            best_loss = min(best_loss, g - g_new)
            t *= 0.5

        if not accepted and best_loss <= max(rounding, 1e-12 * (1.0 + abs(g))):
            # no representable ascent left
            logger.debug("Inner SDP reached working precision after %d steps.", step)
            return SdpSolution(SdpPoint(n=n, X=X), g, step, stationarity)
        if not accepted:
            raise SdpSolverError(
                "Line search failed to find an ascent step",
                last_point=SdpPoint(n=n, X=X),
                stationarity=stationarity,
                steps=step,
            )

        grad_new = M + lam * X_inv_new
        s = D
        y = grad_new - grad
        curvature = -float(np.sum(s * y))
        t_next = float(np.sum(s * s)) / curvature if curvature > 0.0 else 2.0 * t
        t_next = min(max(t_next, 1e-12 / lam), 1e12)

        gain = g_new - g
        stalled = stalled + 1 if gain <= max(1e-3 * settings.tol * (1.0 + abs(g)), rounding) else 0
        X, g, grad, rounding = candidate, g_new, grad_new, rounding_new
        if stalled >= settings.stall_steps:
            logger.debug("Inner SDP stalled after %d steps (g=%.6e).", step, g)
            return SdpSolution(SdpPoint(n=n, X=X), g, step, stationarity)

    raise SdpSolverError(
        "Inner SDP solve hit the step cap",
        last_point=SdpPoint(n=n, X=X),
        stationarity=stationarity,
        steps=settings.max_steps,
    )
