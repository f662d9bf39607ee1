# src/motifcut/analysis/oracles.py

from __future__ import annotations
from dataclasses import dataclass
from typing import Tuple
import math

import numpy as np
import scipy.linalg as la
from scipy.optimize import minimize

from motifcut.errors import InfeasibleCapsError
from motifcut.sdp.domain import SdpPoint


def _kept(y: np.ndarray, mu: float, u: np.ndarray) -> np.ndarray:
    return np.minimum(np.exp(np.log(y) - mu), u)


def brute_force_md_oracle(
    y: np.ndarray,
    W: float,
    u: np.ndarray,
    tol: float = 1e-12,
    max_iter: int = 500,
) -> np.ndarray:
    """Capped entropic projection by bisection on the dual variable.

    w_e(mu) = min(y_e exp(-mu), u_e) and sum_e w_e(mu) is non-increasing in
    mu; bisection finds the mu where it equals W. No sorting is involved.
    """
    y = np.asarray(y, dtype=float)
    u = np.asarray(u, dtype=float)
    if y.shape != u.shape or y.ndim != 1:
        raise ValueError(f"Shape mismatch: y {y.shape} vs caps {u.shape}.")
    if np.any(y <= 0.0):
        raise ValueError("y must be strictly positive.")
    if not W > 0.0:
        raise ValueError(f"Total weight must be positive, got {W!r}.")
    total_caps = float(np.sum(u))
    if total_caps < W * (1.0 - 1e-12):
        raise InfeasibleCapsError(f"Caps sum to {total_caps!r} < W = {W!r}.")
    if np.all(np.isinf(u)):
        return W * y / y.sum()
    if abs(total_caps - W) <= tol * W:
        return u.copy()

    finite = np.isfinite(u)
    log_y = np.log(y)
    with np.errstate(divide="ignore"):
        lo = float(np.min(log_y[finite] - np.log(u[finite])))
    while _kept(y, lo, u).sum() < W:
        lo -= max(1.0, abs(lo))
    hi = float(np.max(log_y)) - math.log(W / y.size)

    mu = 0.5 * (lo + hi)
    for _ in range(max_iter):
        mu = 0.5 * (lo + hi)
        s = _kept(y, mu, u).sum()
        if abs(s - W) <= tol * W or hi - lo <= 1e-15 * max(1.0, abs(mu)):
            break
        if s > W:
            lo = mu
        else:
            hi = mu
    return _kept(y, mu, u)


@dataclass
class KKTReport:
    """Residuals of the optimality conditions of the capped entropic projection."""
    ok: bool
    mu: float
    stationarity: float
    dual_feasibility: float
    complementarity: float
    primal_sum: float
    cap_violation: float
    all_capped: bool


def kkt_check(
    w: np.ndarray,
    y: np.ndarray,
    W: float,
    u: np.ndarray,
    tol: float = 1e-8,
) -> KKTReport:
    """Check w = argmin D(w, y) over {w >= 0, sum w = W, w <= u}.

    With multiplier mu for the sum and lambda_e >= 0 for the caps the
    conditions read w_e = y_e exp(-mu - lambda_e), lambda_e (w_e - u_e) = 0.
    mu is reconstructed from the uncapped pairs (w_e < u_e - tol); for capped
    pairs lambda_e = ln y_e - mu - ln u_e. Stationarity is measured in log
    space.
    """
    w = np.asarray(w, dtype=float)
    y = np.asarray(y, dtype=float)
    u = np.asarray(u, dtype=float)
    if not (w.shape == y.shape == u.shape):
        raise ValueError(f"Shape mismatch: w {w.shape}, y {y.shape}, u {u.shape}.")

    primal_sum = abs(float(w.sum()) - W) / W
    cap_violation = max(0.0, float(np.max(w - u)), float(np.max(-w)))
    uncapped = w < u - tol

    if not np.any(uncapped):
        ok = abs(float(u.sum()) - W) <= tol * W and cap_violation <= tol and primal_sum <= tol
        return KKTReport(
            ok=bool(ok), mu=math.nan, stationarity=0.0, dual_feasibility=0.0,
            complementarity=0.0, primal_sum=primal_sum, cap_violation=cap_violation,
            all_capped=True,
        )

    log_gap = np.log(y) - np.log(np.maximum(w, np.finfo(float).tiny))
    mu = float(np.mean(log_gap[uncapped]))
    stationarity = float(np.max(np.abs(log_gap[uncapped] - mu)))
    lam = np.where(uncapped, 0.0, log_gap - mu)
    dual_feasibility = max(0.0, float(-lam.min()))
    with np.errstate(invalid="ignore"):
        comp = np.where(uncapped, 0.0, np.abs(lam * (w - u)))
    complementarity = float(np.max(comp))

    ok = (
        stationarity <= tol
        and dual_feasibility <= tol
        and complementarity <= tol
        and primal_sum <= tol
        and cap_violation <= tol
    )
    return KKTReport(
        ok=bool(ok), mu=mu, stationarity=stationarity, dual_feasibility=dual_feasibility,
        complementarity=complementarity, primal_sum=primal_sum, cap_violation=cap_violation,
        all_capped=False,
    )


def _factor_to_point(V: np.ndarray, n: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """X = I/n + (1 - 1/n) Vh Vh^T with Vh = V with unit-norm rows."""
    norms = np.linalg.norm(V, axis=1)
    Vh = V / norms[:, None]
    X = np.eye(V.shape[0]) / n + (1.0 - 1.0 / n) * (Vh @ Vh.T)
    return X, Vh, norms


def sdp_oracle_small(
    M: np.ndarray,
    lam: float,
    restarts: int = 50,
    seed: int = 0,
) -> SdpPoint:
    """Reference maximizer of M . X + lam log det X over {X_ii = 1, X >= I/n}.

    Every domain point is X = I/n + (1 - 1/n) C with C a correlation matrix,
    C = Vh Vh^T for a square factor with unit rows. The objective is maximized
    over the factor with L-BFGS from the identity and ``restarts`` random
    starts; the best point wins. Meant for 4 x 4 problems.
    """
    M = np.asarray(M, dtype=float)
    dim = M.shape[0]
    if M.shape != (dim, dim) or dim % 2:
        raise ValueError(f"Expected an even-sized square matrix, got shape {M.shape}.")
    if not lam > 0.0:
        raise ValueError(f"lambda must be positive, got {lam!r}.")
    n = dim // 2
    b = 1.0 - 1.0 / n

    def negative_objective(v: np.ndarray) -> Tuple[float, np.ndarray]:
        V = v.reshape(dim, dim)
        X, Vh, norms = _factor_to_point(V, n)
        evals, evecs = la.eigh(X)
        value = float(np.sum(M * X) + lam * np.sum(np.log(evals)))
        G = M + lam * (evecs / evals) @ evecs.T
        H = 2.0 * b * (G @ Vh)
        radial = np.sum(H * Vh, axis=1)
        grad = (H - radial[:, None] * Vh) / norms[:, None]
        return -value, -grad.ravel()

    rng = np.random.default_rng(seed)
    starts = [np.eye(dim)] + [rng.standard_normal((dim, dim)) for _ in range(restarts)]
    best_value, best_X = -math.inf, np.eye(dim)
    for V0 in starts:
        result = minimize(
            negative_objective, V0.ravel(), jac=True, method="L-BFGS-B",
            options={"maxiter": 5000, "ftol": 1e-15, "gtol": 1e-12},
        )
        X, _, _ = _factor_to_point(result.x.reshape(dim, dim), n)
        value = -float(result.fun)
        if value > best_value:
            best_value, best_X = value, X
    np.fill_diagonal(best_X, 1.0)
    return SdpPoint(n=n, X=0.5 * (best_X + best_X.T))
