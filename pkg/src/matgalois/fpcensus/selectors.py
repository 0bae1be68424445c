"""Selector functions on Mat_n(F_p) and their Fourier transforms.

A selector fixes a subspace V of F_p^n (RREF basis rows u_1..u_k) and a
k x k matrix C, and takes the value 1 on A exactly when A u_j = sum_i C_ij u_i
for every j, i.e. A preserves V and acts there by C in the chosen basis.

Transforms are averaged: hat(B) = p^(-n^2) sum_A psi(A) exp(-2 pi i tr(AB) / p).
Arrays are indexed by matrix entries in row-major order, one axis per entry.
With this pairing the support of a selector transform is the set of B whose
column space lies in V.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

import numpy as np

from ..census.kernels import char_polys
from ..exactalg import fpoly as fp
from ..exactalg.fpoly import FpPoly
from ..exactalg.primes import is_prime
from .counts import GuardError, all_matrices, gaussian_binomial, gl_order, unit_group_order

DFT_LIMIT = 10**6
ZERO_RTOL = 1e-9


def rref(rows, p: int) -> tuple:
    """Reduced row echelon form over F_p, zero rows dropped."""
    m = [[int(a) % p for a in r] for r in rows]
    if not m:
        return ()
    ncols = len(m[0])
    out, r = [], 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [a * inv % p for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    out = [tuple(row) for row in m[:r]]
    return tuple(out)


def rank_mod_p(mat, p: int) -> int:
    return len(rref(mat, p))


@dataclass(frozen=True)
class FpSubspace:
    p: int
    basis: tuple  # k rows of length n, canonical RREF

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        canon = rref(self.basis, self.p)
        if canon != tuple(tuple(r) for r in self.basis):
            raise ValueError("basis must be in reduced row echelon form with independent rows")

    @classmethod
    def span(cls, vectors, p: int) -> FpSubspace:
        return cls(p, rref(vectors, p))

    @property
    def k(self) -> int:
        return len(self.basis)

    @property
    def n(self) -> int:
        return len(self.basis[0]) if self.basis else 0

    @property
    def pivots(self) -> list[int]:
        return [next(j for j, a in enumerate(r) if a) for r in self.basis]

    def contains(self, v) -> bool:
        return rank_mod_p(list(self.basis) + [list(v)], self.p) == self.k


def enumerate_subspaces(n: int, k: int, p: int):
    """Every k-dimensional subspace of F_p^n exactly once, via RREF shapes."""
    for pivots in combinations(range(n), k):
        free = [(i, j) for i in range(k) for j in range(pivots[i] + 1, n) if j not in pivots]
        for vals in product(range(p), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for i, c in enumerate(pivots):
                rows[i][c] = 1
            for (i, j), v in zip(free, vals):
                rows[i][j] = v
            yield FpSubspace(p, tuple(tuple(r) for r in rows))


@dataclass(frozen=True)
class SelectorSpec:
    subspace: FpSubspace
    C: tuple = field()  # k x k over F_p

    def __post_init__(self):
        k, p = self.subspace.k, self.subspace.p
        C = tuple(tuple(int(a) % p for a in r) for r in self.C)
        if len(C) != k or any(len(r) != k for r in C):
            raise ValueError(f"C must be {k} x {k}")
        object.__setattr__(self, "C", C)

    @property
    def p(self) -> int:
        return self.subspace.p

    @property
    def n(self) -> int:
        return self.subspace.n

    @property
    def k(self) -> int:
        return self.subspace.k

    def char_poly(self) -> FpPoly:
        c = char_polys(np.array([self.C], dtype=np.int64))[0]
        return FpPoly([int(x) for x in c], self.p)


def _guard(n: int, p: int) -> int:
    total = p ** (n * n)
    if total > DFT_LIMIT:
        raise GuardError(f"p^(n^2) = {total} exceeds {DFT_LIMIT}")
    return total


def _restriction(mats: np.ndarray, sub: FpSubspace):
    """(invariant mask, restricted k x k matrices) for every matrix in mats."""
    p = sub.p
    U = np.array(sub.basis, dtype=np.int64).T  # n x k, columns u_j
    images = (mats @ U) % p  # column j is A u_j
    C = images[:, sub.pivots, :]  # coordinates read off at the pivots
    back = np.einsum("nk,Nkj->Nnj", U, C) % p
    inv = np.all(back == images, axis=(1, 2))
    return inv, C


def selector_values(spec: SelectorSpec) -> np.ndarray:
    """psi_C over all matrices, shaped (p,)*(n*n)."""
    n, p = spec.n, spec.p
    _guard(n, p)
    mats = all_matrices(n, p)
    inv, C = _restriction(mats, spec.subspace)
    hit = inv & np.all(C == np.array(spec.C, dtype=np.int64), axis=(1, 2))
    return hit.astype(np.float64).reshape((p,) * (n * n))


def _transpose_axes(n: int) -> list[int]:
    # axis (r, s) of the result reads axis (s, r) of the raw transform
    return [s * n + r for r in range(n) for s in range(n)]


def averaged_dft(values: np.ndarray, n: int, p: int) -> np.ndarray:
    raw = np.fft.fftn(values) / float(p ** (n * n))
    return np.transpose(raw, _transpose_axes(n))


def inverse_dft(hat: np.ndarray, n: int, p: int) -> np.ndarray:
    raw = np.transpose(hat, np.argsort(_transpose_axes(n)))
    return np.fft.ifftn(raw) * float(p ** (n * n))


def selector_dft(spec: SelectorSpec) -> np.ndarray:
    """All p^(n^2) averaged Fourier coefficients of psi_C, indexed by B entries."""
    return averaged_dft(selector_values(spec), spec.n, spec.p)


def direct_coefficient(values: np.ndarray, B, p: int) -> complex:
    """Brute-force hat(B) straight from the definition (test oracle)."""
    n = len(B)
    total = 0j
    for idx in zip(*np.nonzero(values)):
        A = np.array(idx).reshape(n, n)
        tr = int(np.trace(A @ np.array(B))) % p
        total += values[idx] * np.exp(-2j * np.pi * tr / p)
    return total / p ** (n * n)


def support(hat: np.ndarray) -> np.ndarray:
    """Boolean mask of coefficients above the exact-zero threshold."""
    mag = np.abs(hat)
    return mag > ZERO_RTOL * mag.max()


def _column_space_inside(n: int, p: int, sub: FpSubspace, columns: bool) -> np.ndarray:
    mats = all_matrices(n, p)
    vecs = mats if columns else np.transpose(mats, (0, 2, 1))
    # column space of B inside V  <=>  every column is killed by the annihilator of V
    ann = _annihilator(sub)
    if not ann:
        return np.ones(len(mats), dtype=bool).reshape((p,) * (n * n))
    W = np.array(ann, dtype=np.int64)  # (n-k) x n
    ok = np.all((W @ vecs) % p == 0, axis=(1, 2))
    return ok.reshape((p,) * (n * n))


def _annihilator(sub: FpSubspace) -> list[list[int]]:
    """Basis of {w : w . v = 0 for all v in V}."""
    n, p, piv = sub.n, sub.p, sub.pivots
    out = []
    for j in range(n):
        if j in piv:
            continue
        w = [0] * n
        w[j] = 1
        for i, c in enumerate(piv):
            w[c] = -sub.basis[i][j] % p
        out.append(w)
    return out


def expected_support(sub: FpSubspace, orientation: str = "column") -> np.ndarray:
    """{B : col(B) inside V} ('column') or {B : row(B) inside V} ('row')."""
    if orientation not in ("column", "row"):
        raise ValueError("orientation is 'column' or 'row'")
    return _column_space_inside(sub.n, sub.p, sub, orientation == "column")


@dataclass
class SelectorReport:
    p: int
    n: int
    k: int
    zero_value: Fraction
    zero_value_float: float
    support_size: int
    support_dimension: float
    column_orientation_match: bool
    row_orientation_match: bool
    parseval_sum: float
    parseval_error: float
    inversion_error: float

    @property
    def passed(self) -> bool:
        return (
            self.zero_value == Fraction(1, self.p ** (self.k * self.n))
            and abs(self.zero_value_float - float(self.zero_value)) < 1e-12
            and self.column_orientation_match
            and self.support_dimension == self.k * self.n
            and self.parseval_error <= 1e-12
            and self.inversion_error <= 1e-9
        )


def selector_report(spec: SelectorSpec) -> SelectorReport:
    n, p, k = spec.n, spec.p, spec.k
    values = selector_values(spec)
    hat = averaged_dft(values, n, p)
    supp = support(hat)
    size = int(supp.sum())
    dim = np.log(size) / np.log(p)
    total = p ** (n * n)
    parseval = float(np.sum(np.abs(hat) ** 2))
    back = inverse_dft(hat, n, p)
    return SelectorReport(
        p=p,
        n=n,
        k=k,
        zero_value=Fraction(int(values.sum()), total),
        zero_value_float=float(hat.reshape(-1)[0].real),
        support_size=size,
        support_dimension=round(float(dim), 9),
        column_orientation_match=bool(np.array_equal(supp, expected_support(spec.subspace, "column"))),
        row_orientation_match=bool(np.array_equal(supp, expected_support(spec.subspace, "row"))),
        parseval_sum=parseval,
        parseval_error=abs(parseval - p ** (-k * n)),
        inversion_error=float(np.max(np.abs(back - values))),
    )


def batch_rank_mod_p(mats: np.ndarray, p: int) -> np.ndarray:
    """Rank over F_p of each matrix in a (N, n, n) array."""
    m = mats.copy() % p
    N, n, _ = m.shape
    rank = np.zeros(N, dtype=np.int64)
    rows = np.arange(N)
    for col in range(n):
        # pick, per matrix, a pivot row at index >= rank with nonzero entry in col
        cand = (m[:, :, col] != 0) & (np.arange(n)[None, :] >= rank[:, None])
        has = cand.any(axis=1)
        piv = np.argmax(cand, axis=1)
        sel = rows[has]
        r, pr = rank[has], piv[has]
        tmp = m[sel, r, :].copy()
        m[sel, r, :] = m[sel, pr, :]
        m[sel, pr, :] = tmp
        inv = np.array([pow(int(a), -1, p) for a in range(1, p)], dtype=np.int64)
        lead = m[sel, r, col]
        m[sel, r, :] = (m[sel, r, :] * inv[lead - 1][:, None]) % p
        for i in range(n):
            f = m[sel, i, col].copy()
            f[r == i] = 0
            m[sel, i, :] = (m[sel, i, :] - f[:, None] * m[sel, r, :]) % p
        rank[has] += 1
    return rank


@dataclass
class RankSupportReport:
    p: int
    n: int
    k: int
    g: tuple
    pairs: int
    expected_pairs: int
    max_by_rank: dict
    count_by_rank: dict
    threshold: float
    min_psi_on_divisible: int
    divisible_count: int

    @property
    def vanishes_above_k(self) -> bool:
        return all(v <= self.threshold for r, v in self.max_by_rank.items() if r > self.k)

    @property
    def passed(self) -> bool:
        return self.vanishes_above_k and self.pairs == self.expected_pairs and self.min_psi_on_divisible >= 1


def psi_g_values(g: FpPoly, n: int) -> tuple[np.ndarray, int]:
    """(Psi_g over all matrices as integer counts, number of (V, C) pairs)."""
    p, k = g.p, g.degree
    _guard(n, p)
    if not g.is_monic() or not 1 <= k <= n:
        raise ValueError("g must be monic with 1 <= deg g <= n")
    if not g.is_squarefree():
        raise ValueError("g must be squarefree")
    mats = all_matrices(n, p)
    psi = np.zeros(len(mats), dtype=np.int64)
    target = np.array(g.coeffs, dtype=np.int64)
    # count of C with char poly g, for the pair total
    ck = sum(1 for _ in _matrices_with_charpoly(g))
    pairs = 0
    for sub in enumerate_subspaces(n, k, p):
        inv, C = _restriction(mats, sub)
        chi = char_polys(C) % p
        psi += inv & np.all(chi == target, axis=1)
        pairs += ck
    return psi, pairs


def _matrices_with_charpoly(g: FpPoly):
    k, p = g.degree, g.p
    mats = all_matrices(k, p)
    chi = char_polys(mats) % p
    hit = np.all(chi == np.array(g.coeffs, dtype=np.int64), axis=1)
    for A in mats[hit]:
        yield tuple(map(tuple, A.tolist()))


def selector_g_rank_support(g: FpPoly, n: int) -> RankSupportReport:
    p, k = g.p, g.degree
    psi, pairs = psi_g_values(g, n)
    hat = averaged_dft(psi.astype(np.float64).reshape((p,) * (n * n)), n, p)
    flat = np.abs(hat).reshape(-1)
    ranks = batch_rank_mod_p(all_matrices(n, p), p)
    threshold = ZERO_RTOL * float(flat.max())
    max_by_rank, count_by_rank = {}, {}
    for r in range(n + 1):
        sel = ranks == r
        count_by_rank[r] = int(sel.sum())
        max_by_rank[r] = float(flat[sel].max()) if sel.any() else 0.0

    mats = all_matrices(n, p)
    chi = char_polys(mats) % p
    divisible = np.array([not any(fp.rem(list(row), list(g.coeffs), p)) for row in chi.tolist()])
    min_psi = int(psi[divisible].min()) if divisible.any() else 1
    expected = gaussian_binomial(n, k, p) * gl_order(k, p) // unit_group_order(g)
    return RankSupportReport(
        p=p,
        n=n,
        k=k,
        g=g.coeffs,
        pairs=pairs,
        expected_pairs=expected,
        max_by_rank=max_by_rank,
        count_by_rank=count_by_rank,
        threshold=threshold,
        min_psi_on_divisible=min_psi,
        divisible_count=int(divisible.sum()),
    )
