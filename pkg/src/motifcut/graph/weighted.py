# src/motifcut/graph/weighted.py

from __future__ import annotations
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, Iterator, Tuple
import numpy as np


def num_pairs(n: int) -> int:
    """Number of unordered vertex pairs, C(n, 2)."""
    return n * (n - 1) // 2


def pair_index(i: int, j: int, n: int) -> int:
    """Lexicographic index of the unordered pair {i, j} among all C(n, 2) pairs."""
    if i == j:
        raise ValueError(f"Pair ({i}, {j}) is not a pair of distinct vertices.")
    if i > j:
        i, j = j, i
    if i < 0 or j >= n:
        raise ValueError(f"Pair ({i}, {j}) out of range for n={n}.")
    return i * n - i * (i + 1) // 2 + (j - i - 1)


def pair_of(index: int, n: int) -> Tuple[int, int]:
    """Inverse of :func:`pair_index`."""
    rows, cols = np.triu_indices(n, k=1)
    if not 0 <= index < rows.size:
        raise ValueError(f"Pair index {index} out of range for n={n}.")
    return int(rows[index]), int(cols[index])


def pair_arrays(n: int) -> Tuple[np.ndarray, np.ndarray]:
    """Row/column arrays of all pairs (i < j) in canonical order."""
    return np.triu_indices(n, k=1)


@dataclass
class WeightedGraph:
    """Graph on vertices 0..n-1 with one weight per unordered pair.

    ``w`` is dense, of length C(n, 2), in lexicographic pair order. Weights
    must be nonnegative unless ``signed`` is set (released graphs of the
    randomized-response baseline keep negative noise).
    """
    n: int
    w: np.ndarray
    signed: bool = False

    def __post_init__(self) -> None:
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"Vertex count must be a positive integer, got {self.n!r}.")
        self.n = int(self.n)
        w = np.asarray(self.w, dtype=float)
        if w.ndim != 1 or w.size != num_pairs(self.n):
            raise ValueError(
                f"Weight vector must have length C({self.n},2)={num_pairs(self.n)}, "
                f"got shape {w.shape}."
            )
        if not np.all(np.isfinite(w)):
            raise ValueError("Weights must be finite.")
        if not self.signed and np.any(w < 0.0):
            raise ValueError("Weights must be nonnegative.")
        self.w = w

    @classmethod
    def empty(cls, n: int) -> "WeightedGraph":
        return cls(n=n, w=np.zeros(num_pairs(n)))

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[Tuple[int, int, float]],
    ) -> "WeightedGraph":
        """Build from (i, j, weight) triples; unlisted pairs get weight 0."""
        w = np.zeros(num_pairs(n))
        for i, j, weight in edges:
            w[pair_index(i, j, n)] = weight
        return cls(n=n, w=w)

    @property
    def num_pairs(self) -> int:
        return self.w.size

    @property
    def total_weight(self) -> float:
        return float(self.w.sum())

    @property
    def max_weight(self) -> float:
        return float(self.w.max()) if self.w.size else 0.0

    def matrix(self) -> np.ndarray:
        """Symmetric n x n weighted adjacency with zero diagonal."""
        A = np.zeros((self.n, self.n))
        rows, cols = pair_arrays(self.n)
        A[rows, cols] = self.w
        A[cols, rows] = self.w
        return A

    def weight(self, i: int, j: int) -> float:
        return float(self.w[pair_index(i, j, self.n)])

    def pairs(self) -> Iterator[Tuple[int, int, float]]:
        """Yield (i, j, weight) for every pair, zero weights included."""
        rows, cols = pair_arrays(self.n)
        for i, j, weight in zip(rows, cols, self.w):
            yield int(i), int(j), float(weight)

    def scaled(self, c: float) -> "WeightedGraph":
        return WeightedGraph(n=self.n, w=c * self.w, signed=self.signed)

    def clipped(self) -> "WeightedGraph":
        """Copy with negative weights set to zero."""
        return WeightedGraph(n=self.n, w=np.clip(self.w, 0.0, None))


@dataclass(frozen=True)
class CutSpec:
    """A pair of vertex sets (S, T) queried for their triangle-motif size."""
    S: FrozenSet[int]
    T: FrozenSet[int]
    disjoint: bool = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "S", frozenset(int(v) for v in self.S))
        object.__setattr__(self, "T", frozenset(int(v) for v in self.T))
        object.__setattr__(self, "disjoint", not (self.S & self.T))

    @classmethod
    def bipartition(cls, S: Iterable[int], n: int) -> "CutSpec":
        S = frozenset(int(v) for v in S)
        return cls(S=S, T=frozenset(range(n)) - S)

    def validate(self, n: int) -> None:
        if not self.disjoint:
            raise ValueError(f"Cut sides overlap on {sorted(self.S & self.T)}.")
        if not self.S or not self.T:
            raise ValueError("Both cut sides must be nonempty.")
        bad = [v for v in self.S | self.T if not 0 <= v < n]
        if bad:
            raise ValueError(f"Vertices {sorted(bad)} out of range for n={n}.")
