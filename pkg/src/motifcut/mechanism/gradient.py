# src/motifcut/mechanism/gradient.py

from __future__ import annotations
from typing import Optional

import numpy as np

from motifcut.graph.motif import derivative_contractions, pair_wedge_sums
from motifcut.sdp.domain import SdpPoint, matrix_sqrt_psd


def estimate_gradient(
    w: np.ndarray,
    X: SdpPoint,
    zeta: np.ndarray,
    w_tilde: np.ndarray,
    u: np.ndarray,
    root: Optional[np.ndarray] = None,
) -> np.ndarray:
    """Stochastic gradient of f at w from a Gaussian sketch of X.

    With z = X^{1/2} zeta, a = z[:n] and b = z[n:], pair e = (i, j) gets

        g_e = 2 a^T D^(e) b + 6 sum_{s != i,j} (u_is + u_js) (w_e - w_tilde_e)

    ``zeta`` and ``w_tilde`` may carry leading batch axes (shapes (..., 2n)
    and (..., C(n, 2))); the result then has shape (..., C(n, 2)). ``root``
    skips recomputing X^{1/2}.
    """
    w = np.asarray(w, dtype=float)
    w_tilde = np.asarray(w_tilde, dtype=float)
    u = np.asarray(u, dtype=float)
    zeta = np.asarray(zeta, dtype=float)
    n = X.n
    if w_tilde.shape[-1:] != w.shape or w.shape != u.shape or w.shape != (n * (n - 1) // 2,):
        raise ValueError(
            f"Weight, reference and cap vectors must have length {n * (n - 1) // 2}; "
            f"got {w.shape}, {w_tilde.shape}, {u.shape}."
        )
    if zeta.shape[-1] != 2 * n:
        raise ValueError(f"Sketch vector must have trailing length {2 * n}, got {zeta.shape}.")

    if root is None:
        root = matrix_sqrt_psd(X)
    z = zeta @ root
    a = z[..., :n]
    b = z[..., n:]
    outer = a[..., :, None] * b[..., None, :]
    bilinear = 2.0 * derivative_contractions(w, outer)
    quadratic = 6.0 * pair_wedge_sums(u) * (w - w_tilde)
    return bilinear + quadratic
