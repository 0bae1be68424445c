"""Exhaustive statistics over Mat_n(F_q) and monic polynomials over F_p."""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np

from ..census.kernels import char_polys
from ..exactalg import fpoly as fp
from ..exactalg.fpoly import FpPoly, factor_mod_p
from ..exactalg.primes import is_prime

MATRIX_LIMIT = 10**8
POLY_LIMIT = 10**7


class GuardError(ValueError):
    pass


class FpMatrix:
    """n x n matrix over F_p with reduced entries."""

    __slots__ = ("p", "rows")

    def __init__(self, rows, p: int):
        if not is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p
        self.rows = tuple(tuple(int(a) % p for a in r) for r in rows)
        if any(len(r) != len(self.rows) for r in self.rows):
            raise ValueError("FpMatrix must be square")

    @property
    def n(self) -> int:
        return len(self.rows)

    def __eq__(self, other):
        return isinstance(other, FpMatrix) and (self.p, self.rows) == (other.p, other.rows)

    def __hash__(self):
        return hash((self.p, self.rows))

    def __repr__(self):
        return f"FpMatrix({[list(r) for r in self.rows]}, p={self.p})"

    def char_poly(self) -> FpPoly:
        c = char_polys(np.array([self.rows], dtype=np.int64))[0]
        return FpPoly([int(x) for x in c], self.p)


def all_matrices(n: int, p: int, start: int = 0, stop: int | None = None) -> np.ndarray:
    """Matrices of Mat_n(F_p) in row-major odometer order, shape (N, n, n)."""
    total = p ** (n * n)
    stop = total if stop is None else stop
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((stop - start, n * n), dtype=np.int64)
    for k in range(n * n - 1, -1, -1):
        out[:, k] = idx % p
        idx //= p
    return out.reshape(-1, n, n)


def monic_polys(n: int, p: int):
    """All monic degree-n coefficient tuples over F_p (constant term first)."""
    for low in product(range(p), repeat=n):
        yield tuple(low) + (1,)


@lru_cache(maxsize=64)
def charpoly_fiber_table(n: int, q: int) -> dict:
    """Map monic f (coefficient tuple) -> number of A in Mat_n(F_q) with char poly f."""
    if not is_prime(q):
        raise ValueError("only prime fields are supported")
    total = q ** (n * n)
    if total > MATRIX_LIMIT:
        raise GuardError(f"q^(n^2) = {total} exceeds {MATRIX_LIMIT}")
    counts = np.zeros(q**n, dtype=np.int64)
    step = 1 << 20
    for start in range(0, total, step):
        mats = all_matrices(n, q, start, min(total, start + step))
        co = char_polys(mats)[:, :n] % q
        key = np.zeros(len(co), dtype=np.int64)
        for i in range(n - 1, -1, -1):
            key = key * q + co[:, i]
        counts += np.bincount(key, minlength=q**n)
    table = {}
    for key, c in enumerate(counts):
        coeffs, k = [], key
        for _ in range(n):
            coeffs.append(k % q)
            k //= q
        table[tuple(coeffs) + (1,)] = int(c)
    return table


def count_charpoly_fiber_fp(f: FpPoly, n: int) -> int:
    if not f.is_monic() or f.degree != n:
        raise ValueError(f"f must be monic of degree {n}")
    return charpoly_fiber_table(n, f.p)[f.coeffs]


def reiner_deviations(n: int, q: int) -> dict:
    """f -> count / q^(n^2-n) - 1 as exact fractions, over all monic f."""
    scale = q ** (n * n - n)
    return {f: Fraction(c, scale) - 1 for f, c in charpoly_fiber_table(n, q).items()}


def max_reiner_deviation(n: int, q: int) -> Fraction:
    return max(abs(d) for d in reiner_deviations(n, q).values())


@lru_cache(maxsize=256)
def index_distribution(p: int, n: int) -> dict:
    """Counter of ind f over all p^n monic f of degree n."""
    if p**n > POLY_LIMIT:
        raise GuardError(f"p^n = {p ** n} exceeds {POLY_LIMIT}")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return dict(Counter(fp.index_list(list(f), p) for f in monic_polys(n, p)))


def index_tail_fraction(p: int, n: int, k: int) -> Fraction:
    """Fraction of monic degree-n polynomials mod p with index >= k."""
    dist = index_distribution(p, n)
    return Fraction(sum(c for ind, c in dist.items() if ind >= k), p**n)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


def gl_order(k: int, p: int) -> int:
    out = 1
    for i in range(k):
        out *= p**k - p**i
    return out


def unit_group_order(g: FpPoly) -> int:
    """|(F_p[x]/g)^x| for squarefree monic g."""
    if not g.is_monic() or g.degree < 1:
        raise ValueError("g must be monic of positive degree")
    if not g.is_squarefree():
        raise ValueError("unit_group_order is only implemented for squarefree g")
    out = 1
    for f, _ in factor_mod_p(g).factors:
        out *= g.p**f.degree - 1
    return out
