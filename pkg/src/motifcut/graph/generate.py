# src/motifcut/graph/generate.py

from __future__ import annotations
from typing import Optional

import networkx as nx
import numpy as np

from motifcut.graph.weighted import WeightedGraph, num_pairs, pair_index

MODELS = ("gnp", "complete", "regular")


def from_networkx(G: nx.Graph, weight: str = "weight") -> WeightedGraph:
    """Convert a networkx graph on nodes 0..n-1; missing weights count as 1."""
    n = G.number_of_nodes()
    if sorted(G.nodes()) != list(range(n)):
        raise ValueError("Nodes must be labelled 0..n-1.")
    w = np.zeros(num_pairs(n))
    for u, v, data in G.edges(data=True):
        if u == v:
            continue
        w[pair_index(u, v, n)] = float(data.get(weight, 1.0))
    return WeightedGraph(n=n, w=w)


def to_networkx(g: WeightedGraph, weight: str = "weight") -> nx.Graph:
    """Convert to a networkx graph holding the nonzero pairs as edges."""
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_weighted_edges_from(
        ((i, j, wt) for i, j, wt in g.pairs() if wt != 0.0), weight=weight
    )
    return G


def gen_graph(
    model: str,
    n: int,
    p: Optional[float] = None,
    d: Optional[int] = None,
    seed: Optional[int] = None,
) -> WeightedGraph:
    """Generate a unit-weight random graph.

    Models:
        gnp       each pair present independently with probability p
        complete  K_n
        regular   uniform random d-regular graph (d * n must be even)

    The same seed always yields the same graph.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}.")
    if model == "gnp":
        if p is None or not 0.0 <= p <= 1.0:
            raise ValueError(f"gnp needs p in [0, 1], got {p!r}.")
        G = nx.gnp_random_graph(n, p, seed=seed)
    elif model == "complete":
        G = nx.complete_graph(n)
    elif model == "regular":
        if d is None or not 0 <= d < n:
            raise ValueError(f"regular needs 0 <= d < n, got d={d!r}, n={n}.")
        if (d * n) % 2:
            raise ValueError(f"regular needs d * n even, got d={d}, n={n}.")
        G = nx.random_regular_graph(d, n, seed=seed)
    else:
        raise ValueError(f"Unknown model {model!r}; choose from {MODELS}.")
    return from_networkx(G)
