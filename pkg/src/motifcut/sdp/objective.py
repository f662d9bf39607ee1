# src/motifcut/sdp/objective.py

from __future__ import annotations
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from motifcut.graph.motif import MotifAdjacency, pair_wedge_sums, triangle_adjacency, vertex_count
from motifcut.sdp.domain import DOMAIN_TOL, SdpPoint, block_embed
from motifcut.sdp.solver import SdpSolution, SolverSettings, inner_sdp_solve, sdp_objective


@dataclass
class SaddleContext:
    """Fixed data of the saddle objective F(w, X).

    ``rho`` holds the quadratic coefficients 3 * sum_s (u_is + u_js) per pair.
    """
    n: int
    target: MotifAdjacency
    reference_weights: np.ndarray
    caps: np.ndarray
    lam: float
    rho: np.ndarray

    def __post_init__(self) -> None:
        pairs = self.n * (self.n - 1) // 2
        for name in ("reference_weights", "caps", "rho"):
            value = np.asarray(getattr(self, name), dtype=float)
            if value.shape != (pairs,):
                raise ValueError(f"{name} must have length {pairs}, got shape {value.shape}.")
            setattr(self, name, value)
        if self.target.n != self.n:
            raise ValueError(f"Target adjacency is for n={self.target.n}, expected {self.n}.")
        if np.any(self.rho < 0.0):
            raise ValueError("Quadratic coefficients must be nonnegative.")
        if self.lam < 0.0:
            raise ValueError(f"lambda must be nonnegative, got {self.lam!r}.")

    @classmethod
    def build(
        cls,
        target_weights: np.ndarray,
        reference_weights: np.ndarray,
        caps: np.ndarray,
        lam: float,
    ) -> "SaddleContext":
        """Context whose target adjacency is that of ``target_weights``."""
        target_weights = np.asarray(target_weights, dtype=float)
        n = vertex_count(target_weights.size)
        return cls(
            n=n,
            target=triangle_adjacency(target_weights),
            reference_weights=reference_weights,
            caps=caps,
            lam=lam,
            rho=3.0 * pair_wedge_sums(np.asarray(caps, dtype=float)),
        )

    def saddle_matrix(self, w: np.ndarray) -> np.ndarray:
        """Block embedding of A_tri(w) - target."""
        return block_embed(triangle_adjacency(w).difference(self.target))

    def quadratic(self, w: np.ndarray) -> float:
        diff = np.asarray(w, dtype=float) - self.reference_weights
        return float(np.sum(self.rho * diff * diff))

    def quadratic_gradient(self, w: np.ndarray) -> np.ndarray:
        return 2.0 * self.rho * (np.asarray(w, dtype=float) - self.reference_weights)


def F_triangle(w: np.ndarray, X: SdpPoint, ctx: SaddleContext, tol: float = DOMAIN_TOL) -> float:
    """Saddle objective at (w, X).

    F(w, X) = block(A_tri(w) - target) . X + lam log det X
              + sum_e rho_e (w_e - w_ref_e)^2
    """
    w = np.asarray(w, dtype=float)
    if w.shape != ctx.reference_weights.shape:
        raise ValueError(f"Weight vector has shape {w.shape}, expected {ctx.reference_weights.shape}.")
    if X.n != ctx.n:
        raise ValueError(f"SDP point is for n={X.n}, expected {ctx.n}.")
    X.validate(tol)
    M = ctx.saddle_matrix(w)
    if ctx.lam == 0.0:
        inner = float(np.sum(M * X.X))
    else:
        inner = sdp_objective(M, ctx.lam, X)
    return inner + ctx.quadratic(w)


def f_triangle(
    w: np.ndarray,
    ctx: SaddleContext,
    settings: SolverSettings = SolverSettings(),
    warm_start: Optional[SdpPoint] = None,
) -> Tuple[float, SdpSolution]:
    """f(w) = max_X F(w, X), with the inner maximizer."""
    solution = inner_sdp_solve(ctx.saddle_matrix(w), ctx.lam, settings, warm_start)
    return F_triangle(w, solution.point, ctx, tol=settings.projection_tol), solution
