"""Primitive lattices in Z^n invariant under an integer matrix.

Lengths are always handled as exact squared Euclidean lengths.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from ..exactalg.intpoly import IntPoly
from ..exactalg.matrix import IntMatrix, char_poly, poly_of_matrix
from ..exactalg.zfactor import _factor_monic
from .snf import det, dot, integer_kernel, is_saturated, lll, rank_q, saturate


def gram(rows) -> list[list[int]]:
    return [[dot(u, v) for v in rows] for u in rows]


def gram_det(rows) -> int:
    return det(gram(rows)) if rows else 1


@dataclass(frozen=True)
class PrimLattice:
    """Saturated sublattice of Z^n given by basis rows."""

    n: int
    basis: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(a) for a in r) for r in self.basis)
        object.__setattr__(self, "basis", rows)
        if any(len(r) != self.n for r in rows):
            raise ValueError(f"basis vectors must have length {self.n}")
        if rows and rank_q(rows) != len(rows):
            raise ValueError("basis rows are dependent")
        if rows and not is_saturated(rows):
            raise ValueError("lattice is not saturated")

    @classmethod
    def from_vectors(cls, vectors, n: int | None = None) -> PrimLattice:
        """Saturation of the span of the given vectors."""
        vectors = [list(v) for v in vectors]
        n = len(vectors[0]) if n is None else n
        if not vectors or rank_q(vectors) == 0:
            return cls(n, ())
        return cls(n, tuple(map(tuple, saturate(vectors))))

    @property
    def k(self) -> int:
        return len(self.basis)

    @property
    def gram_det(self) -> int:
        return gram_det(self.basis)

    def contains(self, v) -> bool:
        return rank_q(list(self.basis) + [list(v)]) == self.k

    def same_as(self, other: PrimLattice) -> bool:
        return self.n == other.n and self.k == other.k and all(other.contains(v) for v in self.basis)

    def is_invariant(self, A: IntMatrix) -> bool:
        return all(self.contains(A.apply(v)) for v in self.basis)


def invariant_kernel_lattice(A: IntMatrix, g: IntPoly) -> PrimLattice:
    """ker g(A) intersected with Z^n, for an irreducible factor g of the char poly."""
    if not g.is_monic() or g.degree < 1:
        raise ValueError("g must be monic of positive degree")
    chi = char_poly(A)
    _, r = divmod(chi, g)
    if not r.is_zero():
        raise ValueError("g does not divide the characteristic polynomial of A")
    fac = _factor_monic(g)
    if len(fac) != 1 or fac[0][1] != 1:
        raise ValueError("g must be irreducible")
    K = integer_kernel(poly_of_matrix(g, A).to_lists())
    L = PrimLattice(A.n, tuple(map(tuple, K)))
    if L.k != g.degree:
        raise ValueError(f"kernel has rank {L.k}, expected {g.degree} (g repeated in the char poly)")
    assert L.is_invariant(A)
    return L


# -- reduction ---------------------------------------------------------------

@dataclass(frozen=True)
class ReducedBasis:
    vectors: tuple
    sq_lengths: tuple
    transform: tuple  # vectors = transform @ original basis

    @property
    def k(self) -> int:
        return len(self.vectors)

    def coordinates(self, v) -> list[int]:
        """Integer a with v = sum a_i v_i (v must lie in the lattice)."""
        return solve_in_basis(self.vectors, v)


def reduce_basis(L: PrimLattice) -> ReducedBasis:
    if L.k < 1:
        raise ValueError("lattice has rank 0")
    b, U = lll(L.basis)
    order = sorted(range(len(b)), key=lambda i: (dot(b[i], b[i]), i))
    b = [b[i] for i in order]
    U = [U[i] for i in order]
    return ReducedBasis(
        tuple(map(tuple, b)),
        tuple(dot(v, v) for v in b),
        tuple(map(tuple, U)),
    )


def solve_in_basis(vectors, v) -> list[int]:
    """Exact coordinates of v in the given independent vectors."""
    k = len(vectors)
    n = len(v)
    # normal equations G a = (v_i . v)
    G = [[Fraction(x) for x in row] for row in gram(vectors)]
    rhs = [Fraction(dot(u, v)) for u in vectors]
    M = [G[i] + [rhs[i]] for i in range(k)]
    for c in range(k):
        piv = next(i for i in range(c, k) if M[i][c])
        M[c], M[piv] = M[piv], M[c]
        for i in range(k):
            if i != c and M[i][c]:
                f = M[i][c] / M[c][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    a = [M[i][k] / M[i][i] for i in range(k)]
    back = [sum(a[i] * vectors[i][j] for i in range(k)) for j in range(n)]
    if back != [Fraction(x) for x in v]:
        raise ValueError("vector is not in the span of the basis")
    if any(x.denominator != 1 for x in a):
        raise ValueError("vector is in the span but not in the lattice")
    return [int(x) for x in a]


# -- pinch points --------------------------------------------------------------

@dataclass(frozen=True)
class PinchReport:
    k: int
    pinches: frozenset  # 1-based (i, j)
    row_counts: tuple  # p_i for i = 1..k
    exponent: int
    c: int

    @property
    def size(self) -> int:
        return len(self.pinches)


def check_staircase(k: int, P) -> None:
    for i, j in P:
        if i <= j:
            raise ValueError(f"pinch point ({i},{j}) is on or above the diagonal")
        for i2 in range(i, k + 1):
            for j2 in range(1, j + 1):
                if (i2, j2) not in P:
                    raise ValueError(f"pinch set is not a lower-left staircase: ({i},{j}) without ({i2},{j2})")


def pinch_points(sq_lengths, T: int, c: int = 1, n: int | None = None) -> PinchReport:
    """Pinch set {(i,j) : c^2 T^2 l_j^2 < l_i^2} for sorted squared lengths.

    The exponent is k^2 + sum p_i (p_i + 1) / 2, capped by kn - |P| when the
    ambient dimension n is given.
    """
    L = [int(x) for x in sq_lengths]
    if any(b < a for a, b in zip(L, L[1:])):
        raise ValueError("lengths must be nondecreasing")
    if T < 1 or c < 1:
        raise ValueError("need T >= 1 and c >= 1")
    k = len(L)
    P = frozenset((i + 1, j + 1) for i in range(k) for j in range(k) if c * c * T * T * L[j] < L[i])
    check_staircase(k, P)
    rows = tuple(sum(1 for (i, _) in P if i == r) for r in range(1, k + 1))
    r = k * k + sum(p * (p + 1) // 2 for p in rows)
    if n is not None:
        r = min(r, k * n - len(P))
    return PinchReport(k, P, rows, r, c)


def g_count_bound(n: int, k: int, report: PinchReport) -> int:
    """Exponent r with #G << T^r for a lattice with the given pinch report."""
    if 2 * k > n:
        raise ValueError("need k <= n/2")
    check_staircase(k, report.pinches)
    size = report.size
    if size >= n - 1:
        return k * n - size
    r = min(k * k + sum(p * (p + 1) // 2 for p in report.row_counts), k * n - size)
    subdiag = any((i + 1, i) in report.pinches for i in range(1, k))
    if not subdiag:
        assert r <= k * n - n + 1, f"exponent {r} exceeds kn - n + 1 = {k * n - n + 1}"
    return r


# -- complements and invariant maps ---------------------------------------------

def orthogonal_complement(L: PrimLattice) -> PrimLattice:
    if L.k == 0:
        K = [[int(i == j) for j in range(L.n)] for i in range(L.n)]
    else:
        K = integer_kernel(list(L.basis))
    C = PrimLattice(L.n, tuple(map(tuple, K)))
    assert C.gram_det == L.gram_det, "primitive lattice and its complement must have equal covolume"
    return C


def invariant_space_dim(L: PrimLattice) -> int:
    """dim {M in Mat_n(Q) : M L inside L (x) Q}."""
    n, k = L.n, L.k
    W = orthogonal_complement(L).basis
    eqs = []
    # w^T M b = sum_{r,s} w_r b_s M_rs = 0
    for w in W:
        for b in L.basis:
            eqs.append([w[r] * b[s] for r in range(n) for s in range(n)])
    dim = n * n - (rank_q(eqs) if eqs else 0)
    assert dim == n * n - k * (n - k)
    return dim


def _restrict(A_rows, vectors) -> list[list[int]]:
    k = len(vectors)
    images = [[dot(row, v) for row in A_rows] for v in vectors]  # A v_j
    cols = []
    for img in images:
        try:
            cols.append(solve_in_basis(vectors, img))
        except ValueError as exc:
            raise ValueError(f"matrix does not preserve the lattice: {exc}") from None
    return [[cols[j][i] for j in range(k)] for i in range(k)]


def restriction_matrix(A: IntMatrix, basis) -> IntMatrix:
    """G with A v_j = sum_i G_ij v_i; basis is a ReducedBasis or a PrimLattice."""
    vectors = basis.vectors if isinstance(basis, ReducedBasis) else basis.basis
    G = IntMatrix(_restrict(A.rows, vectors))
    _, r = divmod(char_poly(A), char_poly(G))
    assert r.is_zero(), "char poly of restriction must divide char poly of A"
    return G


def complement_action(A: IntMatrix, L: PrimLattice) -> IntMatrix:
    """Action of A^T on the orthogonal complement of an A-invariant lattice."""
    comp = orthogonal_complement(L)
    return IntMatrix(_restrict(A.transpose().rows, comp.basis))


def check_charpoly_split(A: IntMatrix, L: PrimLattice) -> bool:
    G = restriction_matrix(A, L)
    H = complement_action(A, L)
    return char_poly(G) * char_poly(H) == char_poly(A)


# -- quantitative checks ----------------------------------------------------------

def covolume_exponent(n: int, k: int) -> int:
    """Exponent of T in the covolume bound, for the squared covolume."""
    return 2 * (k * k * (n - k) + comb(k, 2))


def covolume_constant(n: int, k: int) -> int:
    """Constant K with gram_det <= K T^covolume_exponent(n, k).

    Entries of g(A) are at most (2nT)^k; a Cramer kernel vector v has
    |v|^2 <= n ((n-k) (2nT)^(2k))^(n-k); |A^i v| <= (nT)^i |v|; then
    Hadamard on v, Av, ..., A^(k-1) v.
    """
    return n ** (k * (k - 1) + k) * (n - k) ** (k * (n - k)) * (2 * n) ** (2 * k * k * (n - k))


def covolume_bound(n: int, k: int, T: int) -> int:
    return covolume_constant(n, k) * T ** covolume_exponent(n, k)


@dataclass
class EntryCheck:
    c: int
    entry_violations: list
    chain_violations: list
    chain_checked: bool

    @property
    def ok(self) -> bool:
        return not self.entry_violations and not self.chain_violations


def entry_bound_check(G: IntMatrix, basis: ReducedBasis, T: int, c: int | None = None) -> EntryCheck:
    """|g_ij| l_i <= c T l_j, plus l_(i+1) <= c T l_i when char poly of G is irreducible."""
    k = basis.k
    c = 2**k if c is None else c
    L = basis.sq_lengths
    entry = [
        (i + 1, j + 1)
        for i in range(k)
        for j in range(k)
        if G.rows[i][j] ** 2 * L[i] > c * c * T * T * L[j]
    ]
    irreducible = len(_factor_monic(char_poly(G))) == 1 and _factor_monic(char_poly(G))[0][1] == 1
    chain = []
    if irreducible:
        chain = [(i + 1, i + 2) for i in range(k - 1) if L[i + 1] > c * c * T * T * L[i]]
    return EntryCheck(c, entry, chain, irreducible)


def decomposition_ratio(basis: ReducedBasis, v) -> Fraction:
    """max_i |a_i v_i|^2 / |v|^2 for v = sum a_i v_i."""
    a = basis.coordinates(v)
    nv = dot(v, v)
    return max(Fraction(a_i * a_i * l, nv) for a_i, l in zip(a, basis.sq_lengths))


def is_unimodular(U) -> bool:
    return abs(det(U)) == 1


def example_n6k3(T: int):
    """The n = 6, k = 3 lattice with a pinch point, and a member of its matrix family.

    Returns (lattice vectors, A) where A uses parameters a..j = 1..10 reduced mod T.
    """
    vecs = [
        (1, 0, 0, 0, 0, 0),
        (0, 1, T, 0, 0, 0),
        (0, 0, 0, 1, T, T * T),
    ]
    a, b, c, d, e, f, g, h, i, j = [x % T for x in range(1, 11)]
    A = IntMatrix(
        [
            [a, b, c, d, e, f],
            [0, g, 0, h, i, 0],
            [0, 0, g, 0, h, i],
            [0, 0, 0, j, 0, 0],
            [0, 0, 0, 0, j, 0],
            [0, 0, 0, 0, 0, j],
        ]
    )
    return vecs, A

