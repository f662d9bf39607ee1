# src/motifcut/mechanism/update.py

from __future__ import annotations
import numpy as np

from motifcut.errors import InfeasibleCapsError

WEIGHT_FLOOR = 1e-300


def _check_caps(W: float, u: np.ndarray) -> None:
    if not W > 0.0:
        raise ValueError(f"Total weight must be positive, got {W!r}.")
    if np.any(u < 0.0) or np.any(np.isnan(u)):
        raise ValueError("Caps must be nonnegative.")
    total = float(np.sum(u))
    if total < W * (1.0 - 1e-12):
        raise InfeasibleCapsError(f"Caps sum to {total!r} < W = {W!r}; the capped simplex is empty.")


def capped_entropic_projection(log_y: np.ndarray, W: float, u: np.ndarray) -> np.ndarray:
    """Minimize the KL-type divergence D(x, y) over {x >= 0, sum x = W, x <= u}.

    ``log_y`` is ln y, so y may span any dynamic range. The result is
    invariant to rescaling y. Pairs are visited in non-increasing order of
    y_e / u_e; each takes its proportional share of what is left, or its cap
    if the share exceeds it. Once one pair is uncapped all later pairs are too,
    so the tail is filled in one shot. Infinite caps are allowed.
    """
    log_y = np.asarray(log_y, dtype=float)
    u = np.asarray(u, dtype=float)
    if log_y.shape != u.shape or log_y.ndim != 1:
        raise ValueError(f"Shape mismatch: log y {log_y.shape} vs caps {u.shape}.")
    if not np.all(np.isfinite(log_y)):
        raise ValueError("log y must be finite.")
    _check_caps(W, u)

    with np.errstate(divide="ignore"):
        log_ratio = log_y - np.log(u)
    order = np.argsort(-log_ratio, kind="stable")
    log_y_sorted = log_y[order]
    u_sorted = u[order]
    # ln of sum_{k >= i} y_k
    log_suffix = np.logaddexp.accumulate(log_y_sorted[::-1])[::-1]

    out = np.empty_like(log_y_sorted)
    remaining = float(W)
    N = log_y_sorted.size
    i = 0
    while i < N:
        share = remaining * np.exp(log_y_sorted[i] - log_suffix[i])
        if share < u_sorted[i]:
            break
        out[i] = u_sorted[i]
        remaining -= u_sorted[i]
        i += 1
    if i < N:
        out[i:] = remaining * np.exp(log_y_sorted[i:] - log_suffix[i])

    w = np.empty_like(out)
    w[order] = out
    return np.maximum(w, WEIGHT_FLOOR)


def md_update(
    w: np.ndarray,
    g: np.ndarray,
    W: float,
    u: np.ndarray,
    eta: float,
) -> np.ndarray:
    """One entropic mirror-descent step on the capped simplex.

    y = w * exp(-eta * g), computed in log space, then projected with
    :func:`capped_entropic_projection`.
    """
    w = np.asarray(w, dtype=float)
    g = np.asarray(g, dtype=float)
    if w.shape != g.shape:
        raise ValueError(f"Shape mismatch: w {w.shape} vs g {g.shape}.")
    if np.any(w <= 0.0) or not np.all(np.isfinite(w)):
        raise ValueError("Mirror-descent iterates must be positive and finite.")
    if not np.all(np.isfinite(g)):
        raise ValueError("Gradient must be finite.")
    if eta < 0.0:
        raise ValueError(f"Step length must be nonnegative, got {eta!r}.")
    return capped_entropic_projection(np.log(w) - eta * g, W, u)
