# src/motifcut/analysis/cut_error.py

from __future__ import annotations
from dataclasses import dataclass
from typing import Optional, Tuple
import math

import numpy as np

from motifcut.graph.motif import triangle_adjacency
from motifcut.graph.weighted import CutSpec, WeightedGraph

EXHAUSTIVE_MAX_N = 22
DEFAULT_SAMPLES = 100_000
BLOCK_SIZE = 1 << 14


@dataclass
class CutErrorResult:
    """Largest triangle-motif cut difference found over the evaluated bipartitions."""
    max_error: float
    argmax_cut: CutSpec
    mode: str
    evaluated_cuts: int


def parse_cut_mode(mode: str) -> Tuple[str, Optional[int]]:
    """'exhaustive' -> ('exhaustive', None); 'sampled:<k>' -> ('sampled', k)."""
    if mode == "exhaustive":
        return "exhaustive", None
    kind, sep, count = mode.partition(":")
    if kind == "sampled":
        if not sep:
            return "sampled", DEFAULT_SAMPLES
        try:
            k = int(count)
        except ValueError:
            raise ValueError(f"Sample count {count!r} is not an integer.")
        if k < 1:
            raise ValueError(f"Sample count must be positive, got {k}.")
        return "sampled", k
    raise ValueError(f"Unknown cut mode {mode!r}; use 'exhaustive' or 'sampled:<k>'.")


def bipartition_count(n: int) -> int:
    """Number of bipartitions (S, V \\ S) with S nonempty and vertex n-1 outside S."""
    return (1 << (n - 1)) - 1


def check_cut_mode(mode: str, n: int) -> None:
    """Raise ValueError if ``mode`` cannot be evaluated on an n-vertex graph."""
    kind, k = parse_cut_mode(mode)
    if kind == "exhaustive" and n > EXHAUSTIVE_MAX_N:
        raise ValueError(
            f"Exhaustive sweep is limited to n <= {EXHAUSTIVE_MAX_N}, got n={n}; use sampled mode."
        )
    if kind == "sampled" and n - 1 < 63 and k > bipartition_count(n):
        raise ValueError(f"Only {bipartition_count(n)} bipartitions exist for n={n}; asked for {k}.")


def _difference(g1: WeightedGraph, g2: WeightedGraph) -> np.ndarray:
    if g1.n != g2.n:
        raise ValueError(f"Graphs have different vertex counts: {g1.n} vs {g2.n}.")
    return triangle_adjacency(g1).entries - triangle_adjacency(g2).entries


def _cut_values(X: np.ndarray, Delta: np.ndarray, row_sums: np.ndarray) -> np.ndarray:
    """1/2 x^T Delta (1 - x) for each 0/1 row x of X."""
    return 0.5 * (X @ row_sums - np.einsum("ij,ij->i", X @ Delta, X))


def _cut_from_bits(bits: np.ndarray, n: int) -> CutSpec:
    return CutSpec.bipartition(np.flatnonzero(bits), n)


def _sweep_blocked(Delta: np.ndarray) -> Tuple[float, np.ndarray, int]:
    n = Delta.shape[0]
    row_sums = Delta.sum(axis=1)
    total = bipartition_count(n)
    shifts = np.arange(n - 1, dtype=np.int64)
    best, best_bits = -1.0, None
    for start in range(1, total + 1, BLOCK_SIZE):
        masks = np.arange(start, min(start + BLOCK_SIZE, total + 1), dtype=np.int64)
        X = np.zeros((masks.size, n))
        X[:, : n - 1] = (masks[:, None] >> shifts) & 1
        values = np.abs(_cut_values(X, Delta, row_sums))
        k = int(np.argmax(values))
        if values[k] > best:
            best, best_bits = float(values[k]), X[k].copy()
    return best, best_bits, total


def _sweep_gray(Delta: np.ndarray) -> Tuple[float, np.ndarray, int]:
    """Visit bipartitions in Gray-code order, one vertex flip at a time.

    Keeps v = Delta x and q = x^T Delta x so each cut costs O(n).
    """
    n = Delta.shape[0]
    row_sums = Delta.sum(axis=1)
    total = bipartition_count(n)
    x = np.zeros(n)
    v = np.zeros(n)
    linear = 0.0
    quad = 0.0
    best, best_bits = -1.0, None
    for k in range(1, total + 1):
        i = (k & -k).bit_length() - 1
        if x[i] == 0.0:
            linear += row_sums[i]
            quad += 2.0 * v[i] + Delta[i, i]
            v += Delta[:, i]
            x[i] = 1.0
        else:
            v -= Delta[:, i]
            linear -= row_sums[i]
            quad -= 2.0 * v[i] + Delta[i, i]
            x[i] = 0.0
        value = abs(0.5 * (linear - quad))
        if value > best:
            best, best_bits = value, x.copy()
    return best, best_bits, total


def _sweep_sampled(Delta: np.ndarray, k: int, seed: Optional[int]) -> Tuple[float, np.ndarray, int]:
    """k distinct uniform bipartitions, vertex n-1 always on the T side."""
    n = Delta.shape[0]
    rng = np.random.default_rng(seed)
    row_sums = Delta.sum(axis=1)
    chosen = np.zeros((0, n - 1), dtype=np.uint8)
    while chosen.shape[0] < k:
        draw = rng.integers(0, 2, size=(k - chosen.shape[0], n - 1), dtype=np.uint8)
        draw = draw[draw.any(axis=1)]
        chosen = np.unique(np.vstack([chosen, draw]), axis=0)
    # np.unique sorts rows; keep a seed-determined subset of size k
    chosen = chosen[np.sort(rng.permutation(chosen.shape[0])[:k])]

    best, best_bits = -1.0, None
    for start in range(0, k, BLOCK_SIZE):
        X = np.zeros((min(BLOCK_SIZE, k - start), n))
        X[:, : n - 1] = chosen[start : start + X.shape[0]]
        values = np.abs(_cut_values(X, Delta, row_sums))
        j = int(np.argmax(values))
        if values[j] > best:
            best, best_bits = float(values[j]), X[j].copy()
    return best, best_bits, k


def max_cut_error(
    g1: WeightedGraph,
    g2: WeightedGraph,
    mode: str = "exhaustive",
    sweep: str = "blocked",
    seed: Optional[int] = None,
) -> CutErrorResult:
    """Max over bipartitions (S, V \\ S) of |cut_tri(g1, S) - cut_tri(g2, S)|.

    The motif adjacency difference is formed once. Exhaustive mode visits all
    2^(n-1) - 1 bipartitions, either in vectorized blocks (``sweep='blocked'``)
    or in Gray-code order with O(n) updates (``sweep='gray'``). Sampled mode
    ('sampled:<k>') evaluates k distinct uniform bipartitions drawn with
    ``seed``.
    """
    kind, k = parse_cut_mode(mode)
    Delta = _difference(g1, g2)
    n = g1.n
    if n < 2:
        raise ValueError("Cut error needs at least 2 vertices.")

    check_cut_mode(mode, n)
    if kind == "exhaustive":
        if sweep == "blocked":
            best, bits, count = _sweep_blocked(Delta)
        elif sweep == "gray":
            best, bits, count = _sweep_gray(Delta)
        else:
            raise ValueError(f"Unknown sweep {sweep!r}; choose 'blocked' or 'gray'.")
        label = "exhaustive"
    else:
        best, bits, count = _sweep_sampled(Delta, k, seed)
        label = f"sampled({k})"

    return CutErrorResult(
        max_error=best,
        argmax_cut=_cut_from_bits(bits, n),
        mode=label,
        evaluated_cuts=count,
    )


def utility_bound(
    W_hat: float,
    l3: float,
    n: int,
    w_max: float,
    eps: float,
    delta: float,
    beta: float,
) -> float:
    """sqrt(W_hat l3) n w_max ln^2(n / (delta beta)) / eps^{3/2}, constants dropped."""
    return math.sqrt(W_hat * l3) * n * w_max * math.log(n / (delta * beta)) ** 2 / eps ** 1.5


def randomized_response_envelope(n: int, eps: float, beta: float) -> float:
    """eps^-3 ln^3(n / beta) (n^{5/2} + n^2 ln(1 / beta))."""
    return math.log(n / beta) ** 3 * (n ** 2.5 + n ** 2 * math.log(1.0 / beta)) / eps ** 3
