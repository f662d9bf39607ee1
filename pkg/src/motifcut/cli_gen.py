# src/motifcut/cli_gen.py

from __future__ import annotations
import argparse
from pathlib import Path

from motifcut.config import EXIT_CONFIG, fail
from motifcut.graph.generate import MODELS, gen_graph
from motifcut.graph.io import write_graph

TAG = "motifcut-gen"


def main() -> None:
    parser = argparse.ArgumentParser(
        description="Generate a unit-weight random graph in the motifcut text format."
    )
    parser.add_argument("--model", choices=MODELS, default="gnp", help="Random graph model (default: gnp).")
    parser.add_argument("--n", type=int, required=True, help="Number of vertices.")
    parser.add_argument("--p", type=float, default=None, help="Edge probability for gnp.")
    parser.add_argument("--d", type=int, default=None, help="Degree for regular.")
    parser.add_argument("--seed", type=int, default=0, help="Random seed (default: 0).")
    parser.add_argument(
        "--output",
        "-o",
        default="graph.txt",
        help="Output graph file (default: graph.txt).",
    )
    args = parser.parse_args()

    try:
        g = gen_graph(args.model, args.n, p=args.p, d=args.d, seed=args.seed)
    except ValueError as exc:
        fail(TAG, str(exc), EXIT_CONFIG)

    out = Path(args.output)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_graph(g, out)
    edges = int((g.w != 0.0).sum())
    print(f"[{TAG}] Wrote {args.model} graph with n={g.n}, {edges} edges to {str(out)!r} (seed={args.seed})")
