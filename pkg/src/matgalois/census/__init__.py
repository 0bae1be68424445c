"""Counting engine over integer matrices with bounded entries."""

from .engine import (
    CensusInterrupted,
    CheckpointError,
    count_factor_degree,
    count_integer_eigenvalue,
    count_singular,
    evaluate_chunk,
    read_checkpoint,
    resume_census,
    run_census,
)
from .fit import FitResult, fit_power_log, log_slope
from .records import CSV_HEADER, CensusRecord, StatResult, wilson_interval
from .spec import EXHAUSTIVE, MONTECARLO, CensusGuardError, CensusSpec, split_stats

__all__ = [
    "CSV_HEADER",
    "CensusGuardError",
    "CensusInterrupted",
    "CensusRecord",
    "CensusSpec",
    "CheckpointError",
    "EXHAUSTIVE",
    "FitResult",
    "MONTECARLO",
    "StatResult",
    "count_factor_degree",
    "count_integer_eigenvalue",
    "count_singular",
    "evaluate_chunk",
    "fit_power_log",
    "log_slope",
    "read_checkpoint",
    "resume_census",
    "run_census",
    "split_stats",
    "wilson_interval",
]
