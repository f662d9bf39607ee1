# src/motifcut/privacy/noise.py

from __future__ import annotations
from typing import Dict, Tuple

import numpy as np

_FAMILIES = {"laplace": 0, "gaussian": 1}
_FAMILY_BRANCH = 0
_SUBSTREAM_BRANCH = 1


def laplace_quantile(u: float | np.ndarray, scale: float) -> float | np.ndarray:
    """Inverse CDF of Lap(scale) (density exp(-|x|/scale) / (2 scale))."""
    if scale <= 0.0:
        raise ValueError(f"Laplace scale must be positive, got {scale!r}.")
    u = np.asarray(u, dtype=float)
    if np.any((u <= 0.0) | (u >= 1.0)):
        raise ValueError("Laplace quantile needs u in the open interval (0, 1).")
    x = np.where(u < 0.5, np.log(2.0 * u), -np.log(2.0 * (1.0 - u))) * scale
    return float(x) if x.ndim == 0 else x


class NoiseStream:
    """Seeded source of Laplace and Gaussian noise.

    Each noise family draws from its own child of a ``numpy.random.SeedSequence``
    so the Laplace draws do not depend on how many Gaussian draws were taken,
    and vice versa. The same seed and call sequence reproduce the same draws.
    Not safe for concurrent use; give each worker a :meth:`substream`.
    """

    def __init__(self, seed: int, spawn_key: Tuple[int, ...] = ()):
        if int(seed) != seed or seed < 0:
            raise ValueError(f"Seed must be a nonnegative integer, got {seed!r}.")
        self.seed = int(seed)
        self.spawn_key = tuple(int(k) for k in spawn_key)
        self._rngs = {
            family: np.random.default_rng(
                np.random.SeedSequence(
                    entropy=self.seed,
                    spawn_key=self.spawn_key + (_FAMILY_BRANCH, index),
                )
            )
            for family, index in _FAMILIES.items()
        }
        self.counters: Dict[str, int] = {family: 0 for family in _FAMILIES}

    def substream(self, key: int) -> "NoiseStream":
        """Independent child stream, identified by ``key``."""
        return NoiseStream(self.seed, self.spawn_key + (_SUBSTREAM_BRANCH, int(key)))

    def _uniform(self, size: int | None) -> float | np.ndarray:
        u = self._rngs["laplace"].random(size)
        # random() is [0, 1); the quantile needs (0, 1)
        return np.clip(u, np.finfo(float).tiny, None)

    def laplace(self, scale: float) -> float:
        if scale <= 0.0:
            raise ValueError(f"Laplace scale must be positive, got {scale!r}.")
        x = laplace_quantile(self._uniform(None), scale)
        self.counters["laplace"] += 1
        return float(x)

    def laplace_vector(self, scale: float, size: int) -> np.ndarray:
        if scale <= 0.0:
            raise ValueError(f"Laplace scale must be positive, got {scale!r}.")
        if size == 0:
            return np.zeros(0)
        x = laplace_quantile(self._uniform(size), scale)
        self.counters["laplace"] += size
        return np.atleast_1d(x)

    def gaussian(self, dim: int, rows: int | None = None) -> np.ndarray:
        """``dim`` standard normals, or a (rows, dim) block of them."""
        if dim < 1:
            raise ValueError(f"Gaussian dimension must be at least 1, got {dim}.")
        shape = dim if rows is None else (rows, dim)
        z = self._rngs["gaussian"].standard_normal(shape)
        self.counters["gaussian"] += int(np.prod(shape))
        return z


def laplace_sample(scale: float, stream: NoiseStream) -> float:
    """One draw from Lap(scale)."""
    return stream.laplace(scale)


def gaussian_vector(dim: int, stream: NoiseStream) -> np.ndarray:
    """``dim`` independent standard normal draws."""
    return stream.gaussian(dim)
