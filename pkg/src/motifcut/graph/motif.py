# src/motifcut/graph/motif.py

from __future__ import annotations
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Tuple, Union
import math

import numpy as np

from motifcut.graph.weighted import CutSpec, WeightedGraph, pair_arrays, pair_index

GraphLike = Union[WeightedGraph, np.ndarray]


@dataclass
class MotifAdjacency:
    """Pairwise triangle weights: entry (i, j) sums w_ij w_is w_js over s."""
    n: int
    entries: np.ndarray

    def difference(self, other: "MotifAdjacency") -> np.ndarray:
        if other.n != self.n:
            raise ValueError(f"Vertex counts differ: {self.n} vs {other.n}.")
        return self.entries - other.entries


@dataclass
class DerivativeMatrix:
    """Derivative of the motif adjacency with respect to the weight of ``pair``."""
    n: int
    pair: Tuple[int, int]
    entries: np.ndarray


def vertex_count(n_pairs: int) -> int:
    """Recover n from C(n, 2)."""
    n = int(round((1.0 + math.sqrt(1.0 + 8.0 * n_pairs)) / 2.0))
    if n * (n - 1) // 2 != n_pairs:
        raise ValueError(f"{n_pairs} is not a pair count C(n, 2).")
    return n


def weighted_adjacency(g: GraphLike) -> np.ndarray:
    """Weighted adjacency of a graph, or of a raw pair-weight vector."""
    if isinstance(g, WeightedGraph):
        return g.matrix()
    w = np.asarray(g, dtype=float)
    return WeightedGraph(n=vertex_count(w.size), w=w, signed=True).matrix()


def _triangle_matrix(A: np.ndarray) -> np.ndarray:
    T = A * (A @ A)
    np.fill_diagonal(T, 0.0)
    return T


def triangle_adjacency(g: GraphLike) -> MotifAdjacency:
    """Motif adjacency A_tri with zero diagonal.

    Entry (i, j) is w_ij * sum_{s != i, j} w_is w_js. The zero diagonal of the
    weighted adjacency keeps s = i and s = j out of the product sum.
    """
    A = weighted_adjacency(g)
    return MotifAdjacency(n=A.shape[0], entries=_triangle_matrix(A))


def total_triangle_weight(g: GraphLike) -> float:
    """Sum over all triangles of the product of their three weights."""
    A = weighted_adjacency(g)
    return float(np.trace(A @ A @ A) / 6.0)


def _check_bipartition(S: Iterable[int], n: int) -> np.ndarray:
    S = set(int(v) for v in S)
    if not S or len(S) >= n:
        raise ValueError("S must be a nonempty proper subset of the vertices.")
    if any(not 0 <= v < n for v in S):
        raise ValueError(f"Vertices of S out of range for n={n}.")
    x = np.zeros(n)
    x[list(S)] = 1.0
    return x


def triangle_cut_bipartition(g: GraphLike, S: Iterable[int]) -> float:
    """Triangle-motif size of the cut (S, V \\ S), as 1/2 * 1_S^T A_tri 1_{V\\S}.

    A triangle crosses a bipartition with exactly two of its edges, so the
    matrix form counts every crossing triangle twice.
    """
    T = triangle_adjacency(g).entries
    x = _check_bipartition(S, T.shape[0])
    return float(0.5 * x @ T @ (1.0 - x))


def triangle_cut_general(g: GraphLike, cut: CutSpec) -> float:
    """Triangle-motif size of an (S, T) cut by enumerating vertex triples.

    A triangle counts when it has at least one vertex in S and one in T.
    """
    A = weighted_adjacency(g)
    n = A.shape[0]
    cut.validate(n)
    if n < 3:
        return 0.0
    tri = np.array(list(combinations(range(n), 3)), dtype=int)
    i, j, k = tri[:, 0], tri[:, 1], tri[:, 2]
    weights = A[i, j] * A[j, k] * A[i, k]

    in_s = np.zeros(n, dtype=bool)
    in_s[list(cut.S)] = True
    in_t = np.zeros(n, dtype=bool)
    in_t[list(cut.T)] = True
    crosses = in_s[tri].any(axis=1) & in_t[tri].any(axis=1)
    return float(weights[crosses].sum())


def triangle_derivative(g: GraphLike, e: Tuple[int, int]) -> DerivativeMatrix:
    """Derivative of A_tri with respect to the weight of pair e = (k, l).

    Nonzero entries: (k, l) holds sum_s w_ks w_sl; (k, j) holds w_kj w_jl and
    (l, j) holds w_lj w_jk for every other vertex j. Symmetric.
    """
    A = weighted_adjacency(g)
    n = A.shape[0]
    k, l = sorted(e)
    pair_index(k, l, n)  # validates the pair

    D = np.zeros((n, n))
    common = A[k, :] * A[:, l]
    D[k, l] = D[l, k] = common.sum()
    others = np.ones(n, dtype=bool)
    others[[k, l]] = False
    D[k, others] = common[others]
    D[others, k] = common[others]
    D[l, others] = common[others]
    D[others, l] = common[others]
    return DerivativeMatrix(n=n, pair=(k, l), entries=D)


def derivative_contractions(g: GraphLike, Y: np.ndarray) -> np.ndarray:
    """Return D^{(e)} . Y (entrywise product summed) for every pair e.

    ``Y`` is an n x n matrix, or a stack of them with leading batch axes.
    Equivalent to contracting each :func:`triangle_derivative` with Y but
    never materializes the C(n, 2) derivative matrices:

        G = C o S + (A o S) A + A (A o S),   S = Y + Y^T,   C = A A

    and the contraction for e = (k, l) is G[k, l].
    """
    A = weighted_adjacency(g)
    n = A.shape[0]
    Y = np.asarray(Y, dtype=float)
    if Y.shape[-2:] != (n, n):
        raise ValueError(f"Expected trailing shape ({n}, {n}), got {Y.shape}.")
    S = Y + np.swapaxes(Y, -1, -2)
    C = A @ A
    AS = A * S
    G = C * S + AS @ A + A @ AS
    rows, cols = pair_arrays(n)
    return G[..., rows, cols]


def local_sensitivity_l3(g: GraphLike) -> float:
    """Largest change of any triangle cut caused by a unit change of one weight.

    max over pairs (i, j) of sum_{s != i, j} w_is w_js.
    """
    A = weighted_adjacency(g)
    n = A.shape[0]
    if n < 3:
        return 0.0
    rows, cols = pair_arrays(n)
    return float((A @ A)[rows, cols].max())


def pair_wedge_sums(g: GraphLike) -> np.ndarray:
    """Per pair (i, j): sum_{s != i, j} (w_is + w_js)."""
    A = weighted_adjacency(g)
    r = A.sum(axis=1)
    rows, cols = pair_arrays(A.shape[0])
    return r[rows] + r[cols] - 2.0 * A[rows, cols]


def u_quantities(u: GraphLike) -> Tuple[float, float]:
    """Cap-derived quantities (U_tri, U_wedge) used to calibrate the mechanism.

    U_tri  = max_(i,j) sum_s (u_ij u_is + u_is u_js + u_js u_ij)
    U_wedge = max_(i,j) sum_s (u_is + u_js)
    """
    U = weighted_adjacency(u)
    n = U.shape[0]
    if n < 2:
        return 0.0, 0.0
    rows, cols = pair_arrays(n)
    wedge = pair_wedge_sums(U[rows, cols])
    tri = U[rows, cols] * wedge + (U @ U)[rows, cols]
    return float(tri.max()), float(wedge.max())
