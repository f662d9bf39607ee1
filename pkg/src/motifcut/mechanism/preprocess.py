# src/motifcut/mechanism/preprocess.py

from __future__ import annotations
from dataclasses import dataclass, field
from typing import Dict, List, Optional
import logging
import math

import numpy as np

from motifcut.graph.motif import local_sensitivity_l3, u_quantities
from motifcut.graph.weighted import WeightedGraph
from motifcut.privacy.calibration import TuningConstants
from motifcut.privacy.noise import NoiseStream

logger = logging.getLogger(__name__)

L3_FLOOR = 1e-12


@dataclass
class PreprocessNoise:
    """Laplace draws consumed by :func:`preprocess`, in draw order."""
    W: float
    caps: np.ndarray
    l3: float

    def to_dict(self) -> Dict[str, object]:
        return {"W": float(self.W), "caps": [float(x) for x in self.caps], "l3": float(self.l3)}

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> "PreprocessNoise":
        return cls(W=float(data["W"]), caps=np.asarray(data["caps"], dtype=float), l3=float(data["l3"]))


@dataclass
class PreprocessedInstance:
    """Privately released quantities that parameterize the mechanism."""
    n: int
    W: float
    w_bar: np.ndarray
    u: np.ndarray
    l3_tilde: float
    U_tri: float
    U_lam: float
    degenerate: bool
    noise_record: PreprocessNoise
    degenerate_reasons: List[str] = field(default_factory=list)
    W_clamped: bool = False
    caps_clamped: int = 0
    l3_clamped: bool = False

    def summary(self) -> Dict[str, object]:
        return {
            "W": float(self.W),
            "l3_tilde": float(self.l3_tilde),
            "U_tri": self.U_tri,
            "U_lam": self.U_lam,
            "u_max": float(self.u.max()) if self.u.size else 0.0,
            "caps": [float(x) for x in self.u],
            "degenerate": self.degenerate,
            "degenerate_reasons": list(self.degenerate_reasons),
            "W_clamped": bool(self.W_clamped),
            "caps_clamped": self.caps_clamped,
            "l3_clamped": bool(self.l3_clamped),
        }


def _check_budgets(eps1: float, eps2: float, eps3: float, beta: float) -> None:
    for name, value in (("eps1", eps1), ("eps2", eps2), ("eps3", eps3)):
        if not (value > 0.0 and math.isfinite(value)):
            raise ValueError(f"{name} must be positive and finite, got {value!r}.")
    if not 0.0 < beta < 1.0:
        raise ValueError(f"beta must be in (0, 1), got {beta!r}.")


def preprocess(
    g_hat: WeightedGraph,
    eps1: float,
    eps2: float,
    eps3: float,
    beta: float,
    stream: Optional[NoiseStream] = None,
    constants: TuningConstants = TuningConstants(),
    noise: Optional[PreprocessNoise] = None,
) -> PreprocessedInstance:
    """Release the total weight, per-pair caps and sensitivity proxy.

        W     = W_hat + Lap(1/eps1) + ln(3/beta)/eps1
        w_bar = (W / W_hat) w_hat
        u_e   = w_bar_e + Lap(1/eps2) + ln(6n^2/beta)/eps2 + W/N
        l3    = l3(g_hat) + u_max (Lap(1/eps3) + ln(6n^2/beta)/eps3)

    Laplace draws come from ``stream`` in that order (scalar, N-vector,
    scalar) unless ``noise`` supplies them. The instance is degenerate when
    n < 3, when W_hat < c_degW ln(1/beta)/eps or when
    l3(g_hat) < c_degL3 w_max ln^2(n/beta)/eps^2, where eps = 6 eps1.
    """
    _check_budgets(eps1, eps2, eps3, beta)
    if noise is None and stream is None:
        raise ValueError("preprocess needs a noise stream or an explicit noise record.")

    n = g_hat.n
    N = g_hat.num_pairs
    W_hat = g_hat.total_weight

    if noise is None:
        noise = PreprocessNoise(
            W=stream.laplace(1.0 / eps1),
            caps=stream.laplace_vector(1.0 / eps2, N),
            l3=stream.laplace(1.0 / eps3),
        )
    elif noise.caps.shape != (N,):
        raise ValueError(f"Injected cap noise must have length {N}, got {noise.caps.shape}.")

    W = W_hat + noise.W + math.log(3.0 / beta) / eps1
    W_clamped = W <= 0.0
    if W_clamped:
        W_floor = W_hat * 1e-9 + np.finfo(float).tiny
        logger.info("Released total weight %.3e clamped to %.3e.", W, W_floor)
        W = W_floor

    w_bar = (W / W_hat) * g_hat.w if W_hat > 0.0 else np.zeros(N)
    base = W / N if N else 0.0
    offset = math.log(6.0 * n * n / beta) / eps2
    u = w_bar + noise.caps + offset + base
    floor = w_bar + base
    low = u < floor
    caps_clamped = int(np.count_nonzero(low))
    if caps_clamped:
        logger.info("%d pair caps raised to w_bar + W/N.", caps_clamped)
        u = np.where(low, floor, u)

    l3 = local_sensitivity_l3(g_hat)
    u_max = float(u.max()) if N else 0.0
    l3_tilde = l3 + u_max * (noise.l3 + math.log(6.0 * n * n / beta) / eps3)
    l3_clamped = l3_tilde < L3_FLOOR
    if l3_clamped:
        l3_tilde = L3_FLOOR

    U_tri, U_lam = u_quantities(u) if N else (0.0, 0.0)

    epsilon = 6.0 * eps1
    reasons: List[str] = []
    if n < 3:
        reasons.append("fewer than 3 vertices")
    if W_hat < constants.c_degW * math.log(1.0 / beta) / epsilon:
        reasons.append("total weight below threshold")
    if l3 < constants.c_degL3 * g_hat.max_weight * math.log(n / beta) ** 2 / epsilon ** 2:
        reasons.append("local sensitivity below threshold")
    if reasons:
        logger.info("Degenerate instance: %s.", "; ".join(reasons))

    return PreprocessedInstance(
        n=n,
        W=W,
        w_bar=w_bar,
        u=u,
        l3_tilde=l3_tilde,
        U_tri=U_tri,
        U_lam=U_lam,
        degenerate=bool(reasons),
        noise_record=noise,
        degenerate_reasons=reasons,
        W_clamped=W_clamped,
        caps_clamped=caps_clamped,
        l3_clamped=l3_clamped,
    )
