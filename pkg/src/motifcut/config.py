# src/motifcut/config.py

from __future__ import annotations
from dataclasses import asdict, dataclass, field, fields
from typing import Any, Dict, List, NoReturn, Optional
import logging
import os
import sys

from motifcut.privacy.calibration import TuningConstants

SUBCOMMANDS = ("gen", "run", "baseline", "eval", "verify")
THREADS_ENV = "MOTIFCUT_THREADS"


@dataclass
class RunConfig:
    """Settings of one CLI invocation, embedded in every report it writes."""
    subcommand: str
    input: Optional[str] = None
    output: Optional[str] = None
    model: Optional[str] = None
    n: Optional[int] = None
    p: Optional[float] = None
    d: Optional[int] = None
    epsilon: Optional[float] = None
    delta: Optional[float] = None
    beta: Optional[float] = None
    seed: Optional[int] = None
    seeds: List[int] = field(default_factory=list)
    constants: Dict[str, float] = field(default_factory=lambda: asdict(TuningConstants()))
    cut_mode: str = "exhaustive"
    baseline: Optional[str] = None
    clip_negative: bool = False
    fmt: str = "json"

    def __post_init__(self) -> None:
        if self.subcommand not in SUBCOMMANDS:
            raise ValueError(f"Unknown subcommand {self.subcommand!r}; choose from {SUBCOMMANDS}.")
        if self.fmt not in ("json", "csv"):
            raise ValueError(f"Unknown output format {self.fmt!r}.")
        # validates the values
        TuningConstants(**self.constants)
        if self.epsilon is not None and not self.epsilon > 0.0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon!r}.")
        for name in ("delta", "beta"):
            value = getattr(self, name)
            if value is not None and not 0.0 < value < 1.0:
                raise ValueError(f"{name} must be in (0, 1), got {value!r}.")

    def tuning_constants(self) -> TuningConstants:
        return TuningConstants(**self.constants)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"Unknown configuration keys: {sorted(unknown)}.")
        return cls(**data)


def parse_seeds(spec: str) -> List[int]:
    """'1..20' (inclusive range) or '3,5,7' -> list of seeds."""
    spec = spec.strip()
    if ".." in spec:
        first, _, last = spec.partition("..")
        try:
            lo, hi = int(first), int(last)
        except ValueError:
            raise ValueError(f"Seed range {spec!r} must look like '1..20'.")
        if lo > hi:
            raise ValueError(f"Empty seed range {spec!r}.")
        return list(range(lo, hi + 1))
    try:
        seeds = [int(part) for part in spec.split(",") if part.strip()]
    except ValueError:
        raise ValueError(f"Seed list {spec!r} must be comma-separated integers.")
    if not seeds:
        raise ValueError("No seeds given.")
    return seeds


def worker_count(jobs: int) -> int:
    """Worker-pool size for ``jobs`` tasks, capped by MOTIFCUT_THREADS."""
    cap = os.cpu_count() or 1
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            cap = int(raw)
        except ValueError:
            raise ValueError(f"{THREADS_ENV} must be an integer, got {raw!r}.")
        if cap < 1:
            raise ValueError(f"{THREADS_ENV} must be at least 1, got {cap}.")
    return max(1, min(cap, jobs))


EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INPUT = 3
EXIT_NUMERICAL = 4


def setup_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )


def fail(tag: str, message: str, code: int) -> NoReturn:
    """Print ``message`` to standard error and exit with ``code``."""
    print(f"[{tag}] error: {message}", file=sys.stderr)
    raise SystemExit(code)
