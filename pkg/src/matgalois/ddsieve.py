"""Double discriminants along the shift direction S = Diag(1, ..., n).

For an integer matrix A let F(x, t) = det(xI - tS - A). Then
DD(A) = disc_t disc_x F, where disc_x treats F as a monic degree-n
polynomial in x with coefficients in Z[t].
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from .exactalg.fpoly import FpPoly, poly_index_mod_p
from .exactalg.intpoly import IntPoly, bareiss_det, discriminant, sylvester_matrix
from .exactalg.matrix import IntMatrix, char_poly
from .exactalg.primes import is_prime

HOLDS = "holds"
VACUOUS = "vacuous"
VIOLATED = "violated"


# -- bivariate polynomials ----------------------------------------------------

def _badd(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def _bmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for (i1, j1), u in a.items():
        for (i2, j2), v in b.items():
            k = (i1 + i2, j1 + j2)
            out[k] = out.get(k, 0) + u * v
    return {k: v for k, v in out.items() if v}


@dataclass(frozen=True)
class BivarPoly:
    """Polynomial in x and t; terms maps (deg_x, deg_t) -> integer coefficient."""

    terms: dict = field(hash=False)

    @property
    def degree_x(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    @property
    def degree_t(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    @property
    def total_degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def x_coeffs(self) -> list[IntPoly]:
        """Coefficients of x^0 .. x^d as polynomials in t."""
        d = self.degree_x
        rows = [[0] * (self.degree_t + 1) for _ in range(d + 1)]
        for (i, j), c in self.terms.items():
            rows[i][j] = c
        return [IntPoly(r) for r in rows]

    def at_t(self, t: int) -> IntPoly:
        return IntPoly([c(t) for c in self.x_coeffs()])

    def top_homogeneous(self) -> BivarPoly:
        d = self.total_degree
        return BivarPoly({k: v for k, v in self.terms.items() if sum(k) == d})

    def __eq__(self, other):
        return isinstance(other, BivarPoly) and self.terms == other.terms


def shift_matrix(n: int) -> IntMatrix:
    return IntMatrix.diag(list(range(1, n + 1)))


def bivariate_charpoly(A: IntMatrix) -> BivarPoly:
    """det(xI - tS - A) by cofactor expansion, memoized over column subsets."""
    n = A.n
    rows = A.rows

    def entry(r: int, c: int) -> dict:
        e = {(0, 0): -rows[r][c]} if rows[r][c] else {}
        if r == c:
            e = _badd(e, {(1, 0): 1, (0, 1): -(r + 1)})
        return e

    @lru_cache(maxsize=None)
    def minor(r: int, mask: int) -> tuple:
        # determinant of rows r.. against the columns still free in mask
        if r == n:
            return (((0, 0), 1),)
        acc: dict = {}
        sign = 1
        for c in range(n):
            if not mask >> c & 1:
                continue
            e = entry(r, c)
            if e:
                sub = dict(minor(r + 1, mask & ~(1 << c)))
                term = _bmul(e, sub)
                acc = _badd(acc, term if sign > 0 else {k: -v for k, v in term.items()})
            sign = -sign
        return tuple(sorted(acc.items()))

    F = BivarPoly(dict(minor(0, (1 << n) - 1)))
    expected = {(0, 0): 1}
    for i in range(1, n + 1):
        expected = _bmul(expected, {(1, 0): 1, (0, 1): -i})
    assert F.top_homogeneous().terms == expected, "top homogeneous part must be (x - t)(x - 2t)...(x - nt)"
    return F


def disc_x(F: BivarPoly) -> IntPoly:
    """Discriminant in x of a bivariate polynomial monic in x, as a polynomial in t."""
    coeffs = F.x_coeffs()
    n = len(coeffs) - 1
    if coeffs[-1] != IntPoly([1]):
        raise ValueError("polynomial must be monic in x")
    if n == 1:
        return IntPoly([1])
    deriv = [IntPoly([i]) * coeffs[i] for i in range(1, n + 1)]
    syl = sylvester_matrix(coeffs, deriv)
    syl = [[c if isinstance(c, IntPoly) else IntPoly([c]) for c in row] for row in syl]
    res = bareiss_det(syl)
    return -res if (n * (n - 1) // 2) % 2 else res


def chi_shift_discriminant(n: int) -> int:
    out = 1
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            out *= (i - j) ** 2
    return out


def dd_inner(A: IntMatrix) -> IntPoly:
    """disc_x det(xI - tS - A), checked against its leading term."""
    n = A.n
    D = disc_x(bivariate_charpoly(A))
    assert D.degree == n * n - n and D.lc == chi_shift_discriminant(n), "leading term must be disc(chi_S) t^(n^2-n)"
    return D


def double_discriminant(A: IntMatrix) -> int:
    if A.n < 2:
        raise ValueError("need n >= 2")
    D = dd_inner(A)
    # the t-degree is always n^2 - n (leading coefficient disc chi_S != 0), so no degree drop
    return discriminant(D)


# -- divisibility certificates ---------------------------------------------------

def dd_divisibility_certificate(A: IntMatrix, p: int, dd: int | None = None) -> str:
    """'vacuous' if ind(chi_A mod p) < 2, else 'holds' iff p | DD(A)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p < A.n:
        raise ValueError(f"need p >= n (chi_S separable mod p), got p={p}, n={A.n}")
    ind = poly_index_mod_p(FpPoly(char_poly(A).coeffs, p))
    if ind < 2:
        return VACUOUS
    dd = double_discriminant(A) if dd is None else dd
    return HOLDS if dd % p == 0 else VIOLATED


def forced_index_matrix(n: int, p: int, rng: random.Random, T: int = 3) -> IntMatrix:
    """Random integer matrix whose char poly mod p has index >= 2.

    A = P (a I + N) P^-1 + p B with N strictly upper triangular and P
    unimodular, so chi_A = (x - a)^n mod p.
    """
    if n < 3:
        raise ValueError("index >= 2 needs n >= 3")
    a = rng.randrange(p)
    core = [[(a if i == j else rng.randint(-T, T) if j > i else 0) for j in range(n)] for i in range(n)]
    P, Pinv = _random_unimodular(n, rng)
    M = _mm(_mm(P, core), Pinv)
    B = [[rng.randint(-T, T) for _ in range(n)] for _ in range(n)]
    return IntMatrix([[M[i][j] + p * B[i][j] for j in range(n)] for i in range(n)])


def _mm(X, Y):
    return [[sum(X[i][k] * Y[k][j] for k in range(len(Y))) for j in range(len(Y[0]))] for i in range(len(X))]


def _random_unimodular(n: int, rng: random.Random):
    P = [[int(i == j) for j in range(n)] for i in range(n)]
    Pinv = [row[:] for row in P]
    for _ in range(n):
        i, j = rng.sample(range(n), 2)
        k = rng.choice((-1, 1))
        # P <- P E, E = I + k e_ij ; inverse update E^-1 Pinv
        for r in range(n):
            P[r][j] += k * P[r][i]
        Pinv[i] = [a - k * b for a, b in zip(Pinv[i], Pinv[j])]
    return P, Pinv


# -- the quotient by ZS ----------------------------------------------------------

def canonical_rep_mod_S(A: IntMatrix) -> tuple[IntMatrix, int]:
    """A = A0 + t S with (A0)_11 = 0."""
    t = A.rows[0][0]
    n = A.n
    A0 = IntMatrix([[A.rows[i][j] - (t * (i + 1) if i == j else 0) for j in range(n)] for i in range(n)])
    return A0, t


def shift_invariants(A: IntMatrix) -> tuple:
    """(i a_11 - a_ii for i = 2..n) followed by the off-diagonal entries."""
    n = A.n
    diag = tuple((i + 1) * A.rows[0][0] - A.rows[i][i] for i in range(1, n))
    off = tuple(A.rows[i][j] for i in range(n) for j in range(n) if i != j)
    return diag + off


# -- scans and suites ------------------------------------------------------------

@dataclass
class NonvanishingReport:
    n: int
    bound: int
    scanned: int
    zero: int
    witness: IntMatrix | None
    witness_dd: int | None
    exhaustive: bool

    @property
    def zero_fraction(self) -> float:
        return self.zero / self.scanned if self.scanned else 0.0

    @property
    def found(self) -> bool:
        return self.witness is not None


def dd_nonvanishing_scan(n: int, bound: int, samples: int = 200, seed: int = 0) -> NonvanishingReport:
    """Look for A with entries in [-bound, bound] and DD(A) != 0.

    The whole box is scanned when it has at most ``samples`` elements,
    otherwise ``samples`` seeded random matrices.
    """
    if not 2 <= n <= 4:
        raise ValueError("need 2 <= n <= 4")
    side = 2 * bound + 1
    exhaustive = side ** (n * n) <= samples
    if exhaustive:
        mats = (list(v) for v in product(range(-bound, bound + 1), repeat=n * n))
    else:
        rng = random.Random(seed)
        mats = ([rng.randint(-bound, bound) for _ in range(n * n)] for _ in range(samples))
    scanned = zero = 0
    witness = wdd = None
    for flat in mats:
        A = IntMatrix([flat[i * n:(i + 1) * n] for i in range(n)])
        dd = double_discriminant(A)
        scanned += 1
        if dd == 0:
            zero += 1
        elif witness is None:
            witness, wdd = A, dd
    return NonvanishingReport(n, bound, scanned, zero, witness, wdd, exhaustive)


@dataclass
class DDSuiteReport:
    n: int
    trials: int
    seed: int
    invariance_failures: list
    leading_failures: list
    specialization_failures: list
    canonical_failures: list
    divisibility: dict
    violations: list

    @property
    def passed(self) -> bool:
        return not (
            self.invariance_failures
            or self.leading_failures
            or self.specialization_failures
            or self.canonical_failures
            or self.violations
        )


def dd_suite(n: int, trials: int, seed: int, T: int = 3, primes=(5, 7, 11)) -> DDSuiteReport:
    """Randomized checks: shift invariance, leading term, specialization,
    canonical representatives and the index divisibility claim.

    Each trial draws from its own generator seeded by (seed, trial).
    """
    inv, lead, spec, canon, viol = [], [], [], [], []
    tally = {HOLDS: 0, VACUOUS: 0, VIOLATED: 0}
    S = shift_matrix(n)
    for trial in range(trials):
        rng = random.Random(f"{seed}:{trial}")
        A = IntMatrix([[rng.randint(-T, T) for _ in range(n)] for _ in range(n)])
        dd = double_discriminant(A)
        m = rng.randint(-3, 3)
        if double_discriminant(A + m * S) != dd:
            inv.append((A, m))
        try:
            D = dd_inner(A)
        except AssertionError:
            lead.append(A)
            D = disc_x(bivariate_charpoly(A))
        t = rng.randint(-5, 5)
        if D(t) != discriminant(char_poly(A + t * S)):
            spec.append((A, t))
        A0, t0 = canonical_rep_mod_S(A)
        if A0 + t0 * S != A or shift_invariants(A0) != shift_invariants(A) or double_discriminant(A0) != dd:
            canon.append(A)
        if n >= 3:
            p = primes[trial % len(primes)]
            if p >= n:
                B = forced_index_matrix(n, p, rng)
                status = dd_divisibility_certificate(B, p)
                tally[status] += 1
                if status == VIOLATED:
                    viol.append((B, p))
    return DDSuiteReport(n, trials, seed, inv, lead, spec, canon, tally, viol)
