"""Exceptions raised by motifcut.

Argument problems are plain ``ValueError``; the classes below add the
context a caller needs to report a failure (line numbers, residuals,
partial trajectories).
"""

from __future__ import annotations
from typing import Any


class GraphFormatError(ValueError):
    """Malformed graph file."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class InfeasibleCapsError(ValueError):
    """The capped simplex {w >= 0, sum w = W, w <= u} is empty."""


class ProjectionError(RuntimeError):
    """Alternating projection onto the SDP domain did not converge."""

    def __init__(self, message: str, diag_residual: float, spectral_residual: float):
        super().__init__(
            f"{message} (diag residual {diag_residual:.3e}, "
            f"spectral residual {spectral_residual:.3e})"
        )
        self.diag_residual = diag_residual
        self.spectral_residual = spectral_residual


class SdpSolverError(RuntimeError):
    """The inner SDP solver stopped without meeting its stationarity test."""

    def __init__(self, message: str, last_point: Any, stationarity: float, steps: int):
        super().__init__(
            f"{message} after {steps} steps (stationarity {stationarity:.3e})"
        )
        self.last_point = last_point
        self.stationarity = stationarity
        self.steps = steps


class FeasibilityError(RuntimeError):
    """An iterate left the capped simplex."""


class MechanismError(RuntimeError):
    """A mechanism run failed; ``partial_report`` holds what was completed."""

    def __init__(self, message: str, partial_report: Any):
        super().__init__(message)
        self.partial_report = partial_report
