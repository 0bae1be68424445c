"""Power-law-times-log fits: log v = log c + a log T + b log log T, b in {0, 1}."""

from __future__ import annotations

from dataclasses import dataclass
from math import exp, log

import numpy as np

MIN_T = 4


@dataclass(frozen=True)
class FitResult:
    a: float
    b: int
    c: float
    residual: float
    points_used: int

    def predict(self, T: float) -> float:
        return self.c * T**self.a * log(T) ** self.b


def fit_power_log(points) -> FitResult:
    """Least squares in log space, choosing b by residual (ties go to b = 0).

    Points with T < 4 are dropped before fitting.
    """
    pts = [(float(T), float(v)) for T, v in points]
    if len(pts) < 3:
        raise ValueError("need at least 3 points")
    Ts = [T for T, _ in pts]
    if any(b <= a for a, b in zip(Ts, Ts[1:])):
        raise ValueError("T values must be strictly increasing")
    if any(v <= 0 for _, v in pts):
        raise ValueError("values must be positive")
    pts = [(T, v) for T, v in pts if T >= MIN_T]
    if len(pts) < 3:
        raise ValueError(f"need at least 3 points with T >= {MIN_T}")
    logT = np.array([log(T) for T, _ in pts])
    loglogT = np.log(logT)
    logv = np.array([log(v) for _, v in pts])
    design = np.column_stack([np.ones_like(logT), logT])
    best = None
    for b in (0, 1):
        target = logv - b * loglogT
        sol, *_ = np.linalg.lstsq(design, target, rcond=None)
        resid = float(np.linalg.norm(design @ sol - target))
        if best is None or resid < best[0] - 1e-12:
            best = (resid, b, sol)
    resid, b, (logc, a) = best
    return FitResult(float(a), b, exp(logc), resid, len(pts))


def log_slope(points) -> float:
    """Ordinary least-squares slope of log v against log T."""
    x = np.log([float(T) for T, _ in points])
    y = np.log([float(v) for _, v in points])
    return float(np.polyfit(x, y, 1)[0])
