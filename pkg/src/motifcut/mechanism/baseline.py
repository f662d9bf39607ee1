# src/motifcut/mechanism/baseline.py

from __future__ import annotations
from typing import Optional

import numpy as np

from motifcut.graph.weighted import WeightedGraph
from motifcut.privacy.noise import NoiseStream


def randomized_response(
    g_hat: WeightedGraph,
    epsilon: float,
    stream: Optional[NoiseStream] = None,
    clip: bool = False,
    noise: Optional[np.ndarray] = None,
) -> WeightedGraph:
    """Add independent Lap(1/epsilon) noise to every pair weight.

    Negative weights are kept (the result is ``signed``) unless ``clip`` sets
    them to zero. ``noise`` replaces the stream draws.
    """
    if not epsilon > 0.0:
        raise ValueError(f"epsilon must be positive, got {epsilon!r}.")
    if noise is None:
        if stream is None:
            raise ValueError("randomized_response needs a noise stream or explicit noise.")
        noise = stream.laplace_vector(1.0 / epsilon, g_hat.num_pairs)
    noise = np.asarray(noise, dtype=float)
    if noise.shape != g_hat.w.shape:
        raise ValueError(f"Noise must have shape {g_hat.w.shape}, got {noise.shape}.")

    w = g_hat.w + noise
    if clip:
        return WeightedGraph(n=g_hat.n, w=np.clip(w, 0.0, None))
    return WeightedGraph(n=g_hat.n, w=w, signed=bool(np.any(w < 0.0)))
