# src/motifcut/sdp/domain.py

from __future__ import annotations
from dataclasses import dataclass
from typing import Tuple
import logging

import numpy as np
import scipy.linalg as la

from motifcut.errors import ProjectionError

logger = logging.getLogger(__name__)

DOMAIN_TOL = 1e-7


@dataclass
class SdpPoint:
    """Symmetric 2n x 2n matrix with unit diagonal and eigenvalues >= 1/n."""
    n: int
    X: np.ndarray

    def __post_init__(self) -> None:
        X = np.asarray(self.X, dtype=float)
        if X.shape != (2 * self.n, 2 * self.n):
            raise ValueError(f"Expected a {2 * self.n}x{2 * self.n} matrix, got {X.shape}.")
        self.X = X

    @property
    def floor(self) -> float:
        return 1.0 / self.n

    def eigenvalues(self) -> np.ndarray:
        return la.eigvalsh(self.X)

    def residuals(self) -> Tuple[float, float]:
        """(max |X_ii - 1|, max(0, 1/n - lambda_min))."""
        return _diag_residual(self.X), max(0.0, self.floor - float(self.eigenvalues()[0]))

    def validate(self, tol: float = DOMAIN_TOL) -> None:
        if not np.allclose(self.X, self.X.T, rtol=0.0, atol=tol):
            raise ValueError("SDP point is not symmetric.")
        diag_res, spec_res = self.residuals()
        if diag_res > tol or spec_res > tol:
            raise ValueError(
                f"Point outside the domain: diag residual {diag_res:.3e}, "
                f"spectral residual {spec_res:.3e} (tol {tol:.1e})."
            )

    @classmethod
    def identity(cls, n: int) -> "SdpPoint":
        return cls(n=n, X=np.eye(2 * n))


def _diag_residual(X: np.ndarray) -> float:
    return float(np.max(np.abs(np.diag(X) - 1.0)))


def _symmetrize(X: np.ndarray) -> np.ndarray:
    return 0.5 * (X + X.T)


def _clip_spectrum(X: np.ndarray, floor: float) -> np.ndarray:
    """Frobenius projection onto {eigenvalues >= floor}."""
    evals, evecs = la.eigh(X)
    if evals[0] >= floor:
        return X.copy()
    evals = np.maximum(evals, floor)
    return _symmetrize((evecs * evals) @ evecs.T)


def block_embed(Dmat: np.ndarray) -> np.ndarray:
    """Return [[0, D], [D, 0]] for a symmetric n x n matrix D."""
    Dmat = np.asarray(Dmat, dtype=float)
    if Dmat.ndim != 2 or Dmat.shape[0] != Dmat.shape[1]:
        raise ValueError(f"Expected a square matrix, got shape {Dmat.shape}.")
    scale = max(1.0, float(np.max(np.abs(Dmat)))) if Dmat.size else 1.0
    if not np.allclose(Dmat, Dmat.T, rtol=0.0, atol=1e-12 * scale):
        raise ValueError("Block embedding needs a symmetric matrix.")
    Z = np.zeros_like(Dmat)
    return np.block([[Z, Dmat], [Dmat, Z]])


def project_domain(
    X: np.ndarray,
    tol: float = DOMAIN_TOL,
    max_sweeps: int = 500,
) -> SdpPoint:
    """Map a symmetric 2n x 2n matrix into the domain {X_ii = 1, X >= I/n}.

    Dykstra's alternating projection between the spectral set and the
    unit-diagonal plane, stopped once both residuals are below ``tol``. The
    last iterate has an exact unit diagonal; a final convex combination with
    the identity lifts its smallest eigenvalue to exactly 1/n. Inputs that are
    already in the domain are returned unchanged.
    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] != X.shape[1] or X.shape[0] % 2:
        raise ValueError(f"Expected an even-sized square matrix, got shape {X.shape}.")
    if not np.allclose(X, X.T, rtol=0.0, atol=1e-10 * max(1.0, float(np.max(np.abs(X))))):
        raise ValueError("Domain projection needs a symmetric matrix.")
    n = X.shape[0] // 2
    floor = 1.0 / n
    X = _symmetrize(X)

    if _diag_residual(X) == 0.0 and la.eigvalsh(X)[0] >= floor:
        return SdpPoint(n=n, X=X.copy())

    Y = X.copy()
    P = np.zeros_like(X)
    Q = np.zeros_like(X)
    diag_res = spec_res = np.inf
    for sweep in range(1, max_sweeps + 1):
        Z = _clip_spectrum(Y + P, floor)
        P = Y + P - Z
        Y_next = Z + Q
        np.fill_diagonal(Y_next, 1.0)
        Q = Z + Q - Y_next
        Y = Y_next

        diag_res = _diag_residual(Z)
        lam_min = float(la.eigvalsh(Y)[0])
        spec_res = max(0.0, floor - lam_min)
        if diag_res <= tol and spec_res <= tol:
            logger.debug("Domain projection converged after %d sweeps.", sweep)
            break
    else:
        raise ProjectionError(
            f"Domain projection did not converge in {max_sweeps} sweeps",
            diag_residual=diag_res,
            spectral_residual=spec_res,
        )

    if lam_min < floor:
        # unit diagonal is kept by any combination with I
        theta = (floor - lam_min) / (1.0 - lam_min)
        Y = (1.0 - theta) * Y + theta * np.eye(2 * n)
        np.fill_diagonal(Y, 1.0)
    return SdpPoint(n=n, X=_symmetrize(Y))


def matrix_sqrt_psd(X: SdpPoint | np.ndarray, neg_tol: float = 1e-10) -> np.ndarray:
    """Symmetric square root of a PSD matrix via its eigendecomposition.

    Eigenvalues in (-neg_tol, 0) are clamped to zero; anything more negative
    is rejected.
    """
    A = X.X if isinstance(X, SdpPoint) else np.asarray(X, dtype=float)
    evals, evecs = la.eigh(_symmetrize(A))
    if evals[0] < -neg_tol:
        raise ValueError(f"Matrix is not PSD: smallest eigenvalue {evals[0]:.3e}.")
    root = np.sqrt(np.clip(evals, 0.0, None))
    return _symmetrize((evecs * root) @ evecs.T)
