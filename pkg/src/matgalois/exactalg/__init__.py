"""Exact integer, matrix and polynomial arithmetic."""

from .fpoly import FpFactorization, FpPoly, factor_mod_p, poly_index_mod_p
from .intpoly import (
    IntPoly,
    bareiss_det,
    discriminant,
    is_square,
    rational_integer_roots,
    resultant,
)
from .matrix import IntMatrix, block_diag, char_poly, companion, poly_of_matrix
from .primes import is_prime, primes
from .zfactor import UnsupportedDegreeError, factor_over_Z

__all__ = [
    "FpFactorization",
    "FpPoly",
    "IntMatrix",
    "IntPoly",
    "UnsupportedDegreeError",
    "bareiss_det",
    "block_diag",
    "char_poly",
    "companion",
    "discriminant",
    "factor_mod_p",
    "factor_over_Z",
    "is_prime",
    "is_square",
    "poly_index_mod_p",
    "poly_of_matrix",
    "primes",
    "rational_integer_roots",
    "resultant",
]
