# src/motifcut/graph/io.py

from __future__ import annotations
from pathlib import Path
from typing import Dict, TextIO, Tuple
import math

import numpy as np

from motifcut.errors import GraphFormatError
from motifcut.graph.weighted import WeightedGraph, num_pairs, pair_index


def _parse_header(line: str, line_number: int) -> int:
    key, sep, value = line.partition("=")
    if not sep or key.strip() != "n":
        raise GraphFormatError(f"expected header 'n=<int>', got {line!r}", line_number)
    try:
        n = int(value.strip())
    except ValueError:
        raise GraphFormatError(f"vertex count {value.strip()!r} is not an integer", line_number)
    if n < 1:
        raise GraphFormatError(f"vertex count must be positive, got {n}", line_number)
    return n


def _parse_pair_line(line: str, line_number: int, n: int) -> Tuple[int, int, float]:
    parts = [p.strip() for p in line.split(",")]
    if len(parts) != 3:
        raise GraphFormatError(f"expected 'i,j,weight', got {line!r}", line_number)
    try:
        i = int(parts[0])
        j = int(parts[1])
    except ValueError:
        raise GraphFormatError(f"vertex ids must be integers in {line!r}", line_number)
    try:
        weight = float(parts[2])
    except ValueError:
        raise GraphFormatError(f"weight {parts[2]!r} is not a number", line_number)
    if not 0 <= i < j < n:
        raise GraphFormatError(f"pair ({i},{j}) violates 0 <= i < j < {n}", line_number)
    if not math.isfinite(weight):
        raise GraphFormatError(f"weight {parts[2]!r} is not finite", line_number)
    return i, j, weight


def parse_graph(path: str | Path, allow_negative: bool = False) -> WeightedGraph:
    """Read a weighted graph from a line-oriented text file.

    File format::

        # comments and blank lines are ignored
        n=4
        0,1,1
        0,2,2.5
        1,3,1

    Pairs must satisfy 0 <= i < j < n and may appear at most once; unlisted
    pairs have weight 0. Negative weights are rejected unless
    ``allow_negative`` (released baseline graphs may carry them).
    """
    path = Path(path)
    n: int | None = None
    seen: Dict[int, int] = {}
    w: np.ndarray | None = None

    with path.open("r") as f:
        for line_number, raw in enumerate(f, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if n is None:
                n = _parse_header(line, line_number)
                w = np.zeros(num_pairs(n))
                continue

            i, j, weight = _parse_pair_line(line, line_number, n)
            if weight < 0.0 and not allow_negative:
                raise GraphFormatError(f"negative weight {weight!r}", line_number)
            idx = pair_index(i, j, n)
            if idx in seen:
                raise GraphFormatError(
                    f"duplicate pair ({i},{j}), first listed at line {seen[idx]}",
                    line_number,
                )
            seen[idx] = line_number
            w[idx] = weight

    if n is None:
        raise GraphFormatError(f"no 'n=<int>' header found in {str(path)!r}")
    return WeightedGraph(n=n, w=w, signed=allow_negative and bool(np.any(w < 0.0)))


def write_graph(
    g: WeightedGraph,
    outfile: str | Path,
    fh: TextIO | None = None,
) -> None:
    """Write a graph in the format read by :func:`parse_graph`.

    Only nonzero pairs are listed. Weights use ``repr``, the shortest decimal
    that round-trips, so parse(write(g)) reproduces the weight vector bitwise.
    """
    need_close = False
    if fh is None:
        fh = open(outfile, "w")
        need_close = True

    try:
        fh.write(f"n={g.n}\n")
        for i, j, weight in g.pairs():
            if weight != 0.0:
                fh.write(f"{i},{j},{weight!r}\n")
    finally:
        if need_close:
            fh.close()
