"""Invariant lattices, reduced bases and pinch points."""

from .lattice import (
    PinchReport,
    PrimLattice,
    ReducedBasis,
    check_charpoly_split,
    complement_action,
    covolume_bound,
    decomposition_ratio,
    entry_bound_check,
    example_n6k3,
    g_count_bound,
    invariant_kernel_lattice,
    invariant_space_dim,
    orthogonal_complement,
    pinch_points,
    reduce_basis,
    restriction_matrix,
)
from .snf import elementary_divisors, integer_kernel, saturate, smith_normal_form

__all__ = [
    "PinchReport",
    "PrimLattice",
    "ReducedBasis",
    "check_charpoly_split",
    "complement_action",
    "covolume_bound",
    "decomposition_ratio",
    "elementary_divisors",
    "entry_bound_check",
    "example_n6k3",
    "g_count_bound",
    "integer_kernel",
    "invariant_kernel_lattice",
    "invariant_space_dim",
    "orthogonal_complement",
    "pinch_points",
    "reduce_basis",
    "restriction_matrix",
    "saturate",
    "smith_normal_form",
]
