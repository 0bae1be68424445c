import random

import pytest
import sympy

from matgalois.ddsieve import (
    HOLDS,
    VACUOUS,
    bivariate_charpoly,
    canonical_rep_mod_S,
    chi_shift_discriminant,
    dd_divisibility_certificate,
    dd_inner,
    dd_nonvanishing_scan,
    dd_suite,
    disc_x,
    double_discriminant,
    forced_index_matrix,
    shift_invariants,
    shift_matrix,
)
from matgalois.exactalg import FpPoly, IntMatrix, char_poly, discriminant, poly_index_mod_p

x, t = sympy.symbols("x t")


def sympy_dd(rows):
    n = len(rows)
    M = x * sympy.eye(n) - t * sympy.diag(*range(1, n + 1)) - sympy.Matrix(rows)
    F = sympy.Poly(M.det(), x)
    D = sympy.Poly(sympy.discriminant(F, x), t)
    return D, sympy.discriminant(D, t)


def rand_matrix(rng, n, T=3):
    return IntMatrix([[rng.randint(-T, T) for _ in range(n)] for _ in range(n)])


def test_n2_closed_form_symbolically():
    a, b, c, d = sympy.symbols("a b c d")
    M = x * sympy.eye(2) - t * sympy.diag(1, 2) - sympy.Matrix([[a, b], [c, d]])
    D = sympy.Poly(sympy.discriminant(M.det(), x), t)
    assert sympy.expand(sympy.discriminant(D, t)) == -16 * b * c


def test_n2_examples():
    assert double_discriminant(IntMatrix([[1, 2], [3, 4]])) == -96
    assert double_discriminant(IntMatrix([[0, 1], [0, 0]])) == 0
    rng = random.Random(3)
    for _ in range(5):
        A = rand_matrix(rng, 2, 9)
        assert double_discriminant(A) == -16 * A[0, 1] * A[1, 0]


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_n3_matches_sympy(seed):
    A = rand_matrix(random.Random(seed), 3)
    D, dd = sympy_dd(A.to_lists())
    assert list(reversed(dd_inner(A).coeffs)) == [int(c) for c in D.all_coeffs()]
    assert double_discriminant(A) == dd


def test_bivariate_charpoly_matches_sympy():
    A = rand_matrix(random.Random(9), 4)
    F = bivariate_charpoly(A)
    M = x * sympy.eye(4) - t * sympy.diag(1, 2, 3, 4) - sympy.Matrix(A.to_lists())
    expect = sympy.Poly(M.det(), x, t)
    assert {k: v for k, v in F.terms.items() if v} == {m: int(c) for m, c in expect.terms()}


def test_diagonal_matrices_have_zero_dd():
    # disc_x of prod (x - i t - a_i) is a square in Z[t]
    assert double_discriminant(IntMatrix.diag([0, 1, 3])) == 0
    assert double_discriminant(IntMatrix.zero(3)) == 0


@pytest.mark.parametrize("n,value", [(2, 1), (3, 4), (4, 144)])
def test_leading_coefficient_is_disc_chi_S(n, value):
    assert chi_shift_discriminant(n) == value
    rng = random.Random(n)
    for _ in range(5):
        D = dd_inner(rand_matrix(rng, n))
        assert D.degree == n * n - n and D.lc == value


def test_specialization():
    rng = random.Random(5)
    S = shift_matrix(3)
    for _ in range(5):
        A = rand_matrix(rng, 3)
        D = disc_x(bivariate_charpoly(A))
        for tv in (-2, 0, 3):
            assert D(tv) == discriminant(char_poly(A + tv * S))


def test_shift_invariance():
    rng = random.Random(6)
    S = shift_matrix(3)
    for _ in range(10):
        A = rand_matrix(rng, 3)
        m = rng.randint(-3, 3)
        assert double_discriminant(A + m * S) == double_discriminant(A)


def test_canonical_representative():
    S = shift_matrix(3)
    A = IntMatrix([[0, 1, 2], [3, 4, 5], [6, 7, 8]])
    assert canonical_rep_mod_S(A) == (A, 0)
    assert canonical_rep_mod_S(S) == (IntMatrix.zero(3), 1)
    B = A + 5 * S
    A0, t0 = canonical_rep_mod_S(B)
    assert A0 + t0 * S == B and canonical_rep_mod_S(A0) == (A0, 0)
    assert shift_invariants(A0) == shift_invariants(B) == shift_invariants(A)


def test_forced_index_construction():
    rng = random.Random(1)
    for p in (5, 7, 11):
        for _ in range(3):
            B = forced_index_matrix(3, p, rng)
            assert poly_index_mod_p(FpPoly(char_poly(B).coeffs, p)) >= 2
            assert dd_divisibility_certificate(B, p) == HOLDS


def test_certificate_vacuous_and_guards():
    A = IntMatrix([[0, 1, 0], [0, 0, 1], [5, 5, 0]])  # x^3 - 5x - 5
    assert dd_divisibility_certificate(A, 7) == VACUOUS
    with pytest.raises(ValueError):
        dd_divisibility_certificate(A, 2)
    with pytest.raises(ValueError):
        dd_divisibility_certificate(A, 9)


def test_nonvanishing_scan_finds_witness():
    rep = dd_nonvanishing_scan(2, 1)
    assert rep.exhaustive and rep.found and rep.scanned == 81
    # zero exactly when bc = 0: 81 - 4 * 9 matrices have bc != 0
    assert rep.zero == 81 - 4 * 9
    rep3 = dd_nonvanishing_scan(3, 1, samples=40, seed=2)
    assert rep3.found and rep3.witness_dd == double_discriminant(rep3.witness)


def test_suite_small():
    rep = dd_suite(3, 12, seed=7)
    assert rep.passed and rep.divisibility[HOLDS] == 12
