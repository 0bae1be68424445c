"""Exhaustive finite-field statistics and selector Fourier analysis."""

from .counts import (
    FpMatrix,
    GuardError,
    charpoly_fiber_table,
    count_charpoly_fiber_fp,
    gaussian_binomial,
    gl_order,
    index_distribution,
    index_tail_fraction,
    max_reiner_deviation,
    reiner_deviations,
    unit_group_order,
)
from .selectors import (
    FpSubspace,
    SelectorSpec,
    enumerate_subspaces,
    selector_dft,
    selector_g_rank_support,
    selector_report,
)

__all__ = [
    "FpMatrix",
    "FpSubspace",
    "GuardError",
    "SelectorSpec",
    "charpoly_fiber_table",
    "count_charpoly_fiber_fp",
    "enumerate_subspaces",
    "gaussian_binomial",
    "gl_order",
    "index_distribution",
    "index_tail_fraction",
    "max_reiner_deviation",
    "reiner_deviations",
    "selector_dft",
    "selector_g_rank_support",
    "selector_report",
    "unit_group_order",
]
