# src/motifcut/analysis/gradcheck.py

from __future__ import annotations
from typing import Callable, Optional

import numpy as np

from motifcut.graph.motif import derivative_contractions
from motifcut.sdp.domain import SdpPoint
from motifcut.sdp.objective import SaddleContext, f_triangle
from motifcut.sdp.solver import SolverSettings, inner_sdp_solve

TIGHT = SolverSettings(tol=1e-8)


def exact_gradient(
    w: np.ndarray,
    ctx: SaddleContext,
    settings: SolverSettings = TIGHT,
    X: Optional[SdpPoint] = None,
) -> np.ndarray:
    """Gradient of f at w through the inner maximizer X*.

        grad_e = block(D^(e)) . X* + 2 rho_e (w_e - w_ref_e)
               = 2 D^(e) . X*_12 + 2 rho_e (w_e - w_ref_e)

    with X*_12 the off-diagonal n x n block. ``X`` reuses a known maximizer.
    """
    w = np.asarray(w, dtype=float)
    if X is None:
        X = inner_sdp_solve(ctx.saddle_matrix(w), ctx.lam, settings).point
    n = ctx.n
    off_block = X.X[:n, n:]
    return 2.0 * derivative_contractions(w, off_block) + ctx.quadratic_gradient(w)


def finite_difference_gradient(
    fun: Callable[[np.ndarray], float],
    w: np.ndarray,
    h: float = 1e-4,
) -> np.ndarray:
    """Central differences (fun(w + h e_i) - fun(w - h e_i)) / (2 h) per coordinate."""
    w = np.asarray(w, dtype=float)
    grad = np.empty_like(w)
    for i in range(w.size):
        step = np.zeros_like(w)
        step[i] = h
        grad[i] = (fun(w + step) - fun(w - step)) / (2.0 * h)
    return grad


def f_value_function(
    ctx: SaddleContext,
    settings: SolverSettings = TIGHT,
    warm_start: Optional[SdpPoint] = None,
) -> Callable[[np.ndarray], float]:
    """w -> f(w) for finite differencing, warm-started from ``warm_start``."""

    def fun(w: np.ndarray) -> float:
        value, _ = f_triangle(w, ctx, settings, warm_start)
        return value

    return fun
