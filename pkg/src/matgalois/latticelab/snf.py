"""Exact integer linear algebra: Smith form, kernels, saturation, LLL."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd

from ..exactalg.intpoly import bareiss_det

DELTA = Fraction(3, 4)


def dot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v))


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(M):
    """Return (D, U, V) with U @ M @ V == D, U and V unimodular.

    D is diagonal (rectangular) with d_1 | d_2 | ... and d_i >= 0.
    """
    A = [[int(a) for a in r] for r in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U, V = _identity(m), _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, k):  # row dst += k row src
        A[dst] = [a + k * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, k):
        for r in A:
            r[dst] += k * r[src]
        for r in V:
            r[dst] += k * r[src]

    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    add_row(t, i, -q)
                    if A[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    add_col(t, j, -q)
                    if A[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # enforce divisibility of the rest of the block by the pivot
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return A, U, V


def elementary_divisors(M) -> list[int]:
    D, _, _ = smith_normal_form(M)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]


def rank_q(M) -> int:
    """Rank over Q by fraction-free elimination."""
    A = [[Fraction(a) for a in r] for r in M]
    rank = 0
    cols = len(A[0]) if A else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        for i in range(rank + 1, len(A)):
            if A[i][c]:
                f = A[i][c] / A[rank][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[rank])]
        rank += 1
    return rank


def integer_kernel(M, ncols: int | None = None) -> list[list[int]]:
    """LLL-reduced basis (as rows) of the saturated lattice {w in Z^n : M w = 0}.

    Row-echelon form of [M^T | I] by unimodular row operations; rows whose
    left part vanishes carry a kernel basis in their right part.
    """
    n = len(M[0]) if M else (ncols or 0)
    m = len(M)
    rows = [[M[i][j] for i in range(m)] + [int(j == t) for t in range(n)] for j in range(n)]
    r = 0
    for c in range(m):
        while True:
            live = [i for i in range(r, n) if rows[i][c]]
            if not live:
                break
            piv = min(live, key=lambda i: abs(rows[i][c]))
            rows[r], rows[piv] = rows[piv], rows[r]
            others = [i for i in range(r + 1, n) if rows[i][c]]
            if not others:
                r += 1
                break
            for i in others:
                q = rows[i][c] // rows[r][c]
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
        if r == n:
            break
    kernel = [row[m:] for row in rows[r:]]
    if not kernel:
        return []
    return lll(kernel)[0]


def saturate(rows) -> list[list[int]]:
    """Basis of (Q-span of rows) intersected with Z^n."""
    n = len(rows[0])
    K = integer_kernel(rows)
    if not K:
        return [[int(i == j) for j in range(n)] for i in range(n)]
    return integer_kernel(K, ncols=n)


def is_saturated(rows) -> bool:
    """Full-rank rows span a saturated lattice iff the maximal minors are coprime."""
    k = len(rows)
    if k == 0:
        return True
    g = 0
    for cols in combinations(range(len(rows[0])), k):
        g = gcd(g, bareiss_det([[r[c] for c in cols] for r in rows]))
        if g == 1:
            return True
    return g == 1


def det(M) -> int:
    """Exact determinant via Bareiss."""
    return bareiss_det([list(r) for r in M])


def _gram_schmidt(b):
    bstar, mu = [], [[Fraction(0)] * len(b) for _ in b]
    norms = []
    for i, v in enumerate(b):
        w = [Fraction(a) for a in v]
        for j in range(i):
            mu[i][j] = Fraction(dot(v, bstar[j])) / norms[j] if norms[j] else Fraction(0)
            w = [a - mu[i][j] * c for a, c in zip(w, bstar[j])]
        bstar.append(w)
        norms.append(sum(a * a for a in w))
    return mu, norms


def lll(rows, delta: Fraction = DELTA):
    """Exact LLL. Returns (reduced rows, U) with reduced = U @ rows."""
    b = [list(r) for r in rows]
    k = len(b)
    U = [[int(i == j) for j in range(k)] for i in range(k)]
    i = 1
    while i < k:
        mu, _ = _gram_schmidt(b)
        for j in range(i - 1, -1, -1):
            q = round(mu[i][j])
            if q:
                b[i] = [x - q * y for x, y in zip(b[i], b[j])]
                U[i] = [x - q * y for x, y in zip(U[i], U[j])]
                mu, _ = _gram_schmidt(b)
        mu, norms = _gram_schmidt(b)
        if norms[i] >= (delta - mu[i][i - 1] ** 2) * norms[i - 1]:
            i += 1
        else:
            b[i], b[i - 1] = b[i - 1], b[i]
            U[i], U[i - 1] = U[i - 1], U[i]
            i = max(i - 1, 1)
    return b, U
