"""Vectorized per-chunk evaluation of census statistics.

Characteristic polynomials are computed for a whole chunk at once with
the Faddeev-LeVerrier recurrence in int64 when the coefficient bounds
allow it (object arrays of Python ints otherwise). Statistics that need
factorization are evaluated once per distinct polynomial.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb, isqrt

import numpy as np

from .. import galois
from ..exactalg.intpoly import IntPoly, discriminant
from ..exactalg.zfactor import _factor_monic

INT64_SAFE = 1 << 62


def coeff_bounds(n: int, T: int) -> list[int]:
    """|c_i| <= C(n,i) n^i T^i for the coefficient of x^(n-i)."""
    return [comb(n, i) * (n * T) ** i for i in range(n + 1)]


def fits_int64(n: int, T: int) -> bool:
    return (2 * n * max(T, 1)) ** (n + 1) < INT64_SAFE


def char_polys(mats: np.ndarray) -> np.ndarray:
    """Batched det(xI - A); returns (N, n+1), constant term first."""
    N, n, _ = mats.shape
    dtype = mats.dtype
    coeffs = np.zeros((N, n + 1), dtype=dtype)
    coeffs[:, n] = 1
    if n == 1:
        coeffs[:, 0] = -mats[:, 0, 0]
        return coeffs
    if n == 2:
        a, b, c, d = mats[:, 0, 0], mats[:, 0, 1], mats[:, 1, 0], mats[:, 1, 1]
        coeffs[:, 1] = -(a + d)
        coeffs[:, 0] = a * d - b * c
        return coeffs
    eye = np.eye(n, dtype=dtype)
    m = np.zeros_like(mats)
    for k in range(1, n + 1):
        m = mats @ m + coeffs[:, n - k + 1, None, None] * eye
        tr = np.einsum("kii->k", mats @ m)
        coeffs[:, n - k] = -tr // k
    return coeffs


def check_coeff_bound(coeffs: np.ndarray, n: int, T: int) -> None:
    bounds = coeff_bounds(n, T)
    for i in range(1, n + 1):
        col = coeffs[:, n - i]
        worst = int(np.max(np.abs(col))) if len(col) else 0
        if worst > bounds[i]:
            raise AssertionError(f"char poly coefficient bound violated at x^{n - i}: {worst} > {bounds[i]}")


def is_perfect_square(v: np.ndarray) -> np.ndarray:
    """Elementwise v >= 0 and v a perfect square, exact for int64 input."""
    if v.dtype == object:
        return np.array([x >= 0 and isqrt(x) ** 2 == x for x in v], dtype=bool)
    out = np.zeros(v.shape, dtype=bool)
    nonneg = v >= 0
    if not nonneg.any():
        return out
    w = v[nonneg]
    if int(w.max()) < (1 << 52):
        s = np.floor(np.sqrt(w.astype(np.float64))).astype(np.int64)
        hit = np.zeros(w.shape, dtype=bool)
        for d in (-1, 0, 1):
            t = s + d
            hit |= (t >= 0) & (t * t == w)
        out[nonneg] = hit
    else:
        out[nonneg] = [isqrt(int(x)) ** 2 == int(x) for x in w]
    return out


def has_integer_root(coeffs: np.ndarray, n: int, T: int) -> np.ndarray:
    """Whether each monic row has an integer root (roots satisfy |r| <= nT)."""
    N = coeffs.shape[0]
    if n == 1:
        return np.ones(N, dtype=bool)
    if n == 2:
        # monic quadratic: rational roots are integral, so disc must be a square
        c1, c0 = coeffs[:, 1], coeffs[:, 0]
        return is_perfect_square(c1 * c1 - 4 * c0)
    hit = coeffs[:, 0] == 0
    bound = n * T
    scan_max = bound**n * sum(coeff_bounds(n, T))
    if coeffs.dtype == object or scan_max >= INT64_SAFE:
        from ..exactalg.intpoly import rational_integer_roots

        for idx in np.flatnonzero(~hit):
            row = [int(c) for c in coeffs[idx]]
            hit[idx] = bool(rational_integer_roots(IntPoly(row), bound))
        return hit
    todo = np.flatnonzero(~hit)
    sub = coeffs[todo]
    c0 = sub[:, 0]
    found = np.zeros(len(todo), dtype=bool)
    for r in range(1, bound + 1):
        # a root must divide the nonzero constant term
        cand = (c0 % r) == 0
        if not cand.any():
            continue
        rows = sub[cand]
        for lam in (r, -r):
            acc = np.zeros(len(rows), dtype=np.int64)
            for i in range(n, -1, -1):
                acc = acc * lam + rows[:, i]
            found[np.flatnonzero(cand)[acc == 0]] = True
    hit[todo] = found
    return hit


def cubic_disc(coeffs: np.ndarray) -> np.ndarray:
    c, b, a = coeffs[:, 0], coeffs[:, 1], coeffs[:, 2]
    return a * a * b * b - 4 * b**3 - 4 * a**3 * c - 27 * c * c + 18 * a * b * c


@lru_cache(maxsize=1 << 18)
def poly_profile(coeffs: tuple, prime_budget: int) -> tuple:
    """(nonsn, uncertified, reducible, frozenset of irreducible factor degrees)."""
    f = IntPoly(coeffs)
    n = f.degree
    if n <= 1:
        return (False, False, False, frozenset({n}))
    factors = _factor_monic(f)
    degs = frozenset(g.degree for g, _ in factors)
    reducible = len(factors) > 1 or factors[0][1] > 1
    if reducible:
        return (True, False, True, degs)
    if discriminant(f) == 0:
        return (True, False, True, degs)
    label = galois.certify_full_symmetric(f, prime_budget)
    uncertified = label.verdict == galois.UNCERTIFIED
    return (not label.is_full_symmetric, uncertified, False, degs)


def _radices(coeffs: np.ndarray):
    n = coeffs.shape[1] - 1
    spans = [2 * int(np.max(np.abs(coeffs[:, i]), initial=0)) + 1 for i in range(n)]
    total = 1
    for s in spans:
        total *= s
    return spans if total < INT64_SAFE else None


def unique_rows(coeffs: np.ndarray):
    """Distinct rows with multiplicities and inverse index."""
    if coeffs.dtype != object:
        spans = _radices(coeffs)
        if spans is None:
            uniq, inverse, counts = np.unique(coeffs, axis=0, return_inverse=True, return_counts=True)
            return uniq, inverse.reshape(-1), counts
        # mixed-radix key per row; sorting 1-D keys is much cheaper than axis=0
        key = np.zeros(len(coeffs), dtype=np.int64)
        for i, s in enumerate(spans):
            key = key * s + (coeffs[:, i] + s // 2)
        ukeys, inverse, counts = np.unique(key, return_inverse=True, return_counts=True)
        uniq = np.empty((len(ukeys), coeffs.shape[1]), dtype=coeffs.dtype)
        uniq[:, -1] = 1
        rest = ukeys.copy()
        for i in range(len(spans) - 1, -1, -1):
            s = spans[i]
            uniq[:, i] = rest % s - s // 2
            rest //= s
        return uniq, inverse.reshape(-1), counts
    keyed = {}
    inverse = np.empty(len(coeffs), dtype=np.int64)
    rows = []
    for i, row in enumerate(map(tuple, coeffs)):
        j = keyed.get(row)
        if j is None:
            j = keyed[row] = len(rows)
            rows.append(row)
        inverse[i] = j
    counts = np.bincount(inverse, minlength=len(rows))
    return np.array(rows, dtype=object), inverse, counts
