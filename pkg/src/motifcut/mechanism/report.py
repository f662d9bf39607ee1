# src/motifcut/mechanism/report.py

from __future__ import annotations
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, TextIO
import csv
import hashlib
import json

import numpy as np

from motifcut.graph.weighted import WeightedGraph

TIMING_FIELDS = ("timing",)

SUMMARY_COLUMNS = (
    "seed",
    "n",
    "epsilon",
    "delta",
    "beta",
    "degenerate",
    "T",
    "L",
    "lam",
    "eta",
    "W",
    "l3_tilde",
    "selected_restart",
    "selected_f",
    "output_total_weight",
    "max_cut_error",
    "utility_bound",
    "status",
)


def graph_digest(g: WeightedGraph) -> str:
    """sha256 of the vertex count and the raw weight vector."""
    h = hashlib.sha256()
    h.update(str(g.n).encode())
    h.update(np.ascontiguousarray(g.w, dtype="<f8").tobytes())
    return h.hexdigest()


@dataclass
class MechanismReport:
    """Record of one private release.

    Everything except ``timing`` is a deterministic function of the input
    graph, the seed and the configuration.
    """
    seed: int
    n: int
    epsilon: float
    delta: float
    beta: float
    input_digest: str
    degenerate: bool
    preprocess: Dict[str, Any]
    noise: Dict[str, Any]
    params: Optional[Dict[str, Any]] = None
    ledger: List[Dict[str, Any]] = field(default_factory=list)
    restarts: List[Dict[str, Any]] = field(default_factory=list)
    selected_restart: Optional[int] = None
    selected_f: Optional[float] = None
    final_weights: List[float] = field(default_factory=list)
    output_total_weight: float = 0.0
    metrics: Dict[str, Any] = field(default_factory=dict)
    config: Dict[str, Any] = field(default_factory=dict)
    solver: Dict[str, Any] = field(default_factory=dict)
    status: str = "ok"
    timing: Dict[str, float] = field(default_factory=dict)

    def to_dict(self, include_timing: bool = True) -> Dict[str, Any]:
        data = asdict(self)
        if not include_timing:
            for key in TIMING_FIELDS:
                data.pop(key, None)
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "MechanismReport":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"Unknown report fields: {sorted(unknown)}.")
        return cls(**data)

    def output_graph(self) -> WeightedGraph:
        return WeightedGraph(n=self.n, w=np.asarray(self.final_weights, dtype=float))

    def summary_row(self) -> Dict[str, Any]:
        params = self.params or {}
        row = {
            "seed": self.seed,
            "n": self.n,
            "epsilon": self.epsilon,
            "delta": self.delta,
            "beta": self.beta,
            "degenerate": self.degenerate,
            "T": params.get("T", ""),
            "L": params.get("L", ""),
            "lam": params.get("lam", ""),
            "eta": params.get("eta", ""),
            "W": self.preprocess.get("W", ""),
            "l3_tilde": self.preprocess.get("l3_tilde", ""),
            "selected_restart": "" if self.selected_restart is None else self.selected_restart,
            "selected_f": "" if self.selected_f is None else self.selected_f,
            "output_total_weight": self.output_total_weight,
            "max_cut_error": self.metrics.get("max_cut_error", ""),
            "utility_bound": self.metrics.get("utility_bound", ""),
            "status": self.status,
        }
        return row


def report_json(report: MechanismReport, include_timing: bool = True) -> str:
    """Canonical JSON text of a report (sorted keys, fixed indentation)."""
    return json.dumps(report.to_dict(include_timing), sort_keys=True, indent=2) + "\n"


def write_summary_csv(
    reports: Iterable[MechanismReport],
    outfile: str | Path,
    fh: TextIO | None = None,
) -> None:
    """One row per report, columns in :data:`SUMMARY_COLUMNS` order."""
    need_close = False
    if fh is None:
        fh = open(outfile, "w", newline="")
        need_close = True

    try:
        writer = csv.DictWriter(fh, fieldnames=SUMMARY_COLUMNS)
        writer.writeheader()
        for report in reports:
            writer.writerow(report.summary_row())
    finally:
        if need_close:
            fh.close()


def emit_report(
    report: MechanismReport,
    outfile: str | Path,
    fmt: str = "json",
    fh: TextIO | None = None,
) -> None:
    """Write a report as the complete JSON record or as a one-row CSV summary."""
    if fmt == "csv":
        write_summary_csv([report], outfile, fh=fh)
        return
    if fmt != "json":
        raise ValueError(f"Unknown report format {fmt!r}; choose 'json' or 'csv'.")

    need_close = False
    if fh is None:
        fh = open(outfile, "w")
        need_close = True

    try:
        fh.write(report_json(report))
    finally:
        if need_close:
            fh.close()


def load_report(path: str | Path) -> MechanismReport:
    with Path(path).open("r") as f:
        return MechanismReport.from_dict(json.load(f))
