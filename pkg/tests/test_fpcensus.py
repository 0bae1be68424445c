import cmath
import itertools
from fractions import Fraction

import numpy as np
import pytest
import sympy

from matgalois.exactalg import FpPoly, factor_mod_p
from matgalois.fpcensus import (
    FpMatrix,
    FpSubspace,
    GuardError,
    SelectorSpec,
    charpoly_fiber_table,
    count_charpoly_fiber_fp,
    enumerate_subspaces,
    gaussian_binomial,
    gl_order,
    index_distribution,
    index_tail_fraction,
    max_reiner_deviation,
    reiner_deviations,
    selector_dft,
    selector_g_rank_support,
    selector_report,
    unit_group_order,
)
from matgalois.fpcensus.counts import all_matrices
from matgalois.fpcensus.selectors import (
    batch_rank_mod_p,
    expected_support,
    psi_g_values,
    rank_mod_p,
    selector_values,
    support,
)

X = sympy.Symbol("x")


def brute_fiber_table(n, q):
    table = {}
    for flat in itertools.product(range(q), repeat=n * n):
        M = sympy.Matrix(n, n, list(flat))
        cp = M.charpoly(X).all_coeffs()
        key = tuple(int(c) % q for c in reversed(cp))
        table[key] = table.get(key, 0) + 1
    return table


@pytest.mark.parametrize("q", [2, 3])
def test_fiber_table_n2_matches_sympy(q):
    assert {k: v for k, v in charpoly_fiber_table(2, q).items() if v} == brute_fiber_table(2, q)


def test_fiber_table_n3_q2_matches_sympy():
    assert {k: v for k, v in charpoly_fiber_table(3, 2).items() if v} == brute_fiber_table(3, 2)


@pytest.mark.parametrize("q", [2, 3, 5, 7])
def test_n2_fibers_by_factorization_type(q):
    # split distinct: q^2 + q; irreducible: q^2 - q; repeated root: q^2
    for f, c in charpoly_fiber_table(2, q).items():
        degs = factor_mod_p(FpPoly(f, q)).degrees()
        if degs == [2]:
            assert c == q * q - q
        elif FpPoly(f, q).is_squarefree():
            assert c == q * q + q
        else:
            assert c == q * q


@pytest.mark.parametrize("q", [2, 3, 5, 7])
def test_reiner_n2_max_deviation_is_one_over_q(q):
    assert max_reiner_deviation(2, q) == Fraction(1, q)
    assert sum(charpoly_fiber_table(2, q).values()) == q**4


def test_reiner_n3():
    assert max_reiner_deviation(3, 2) == Fraction(3, 4)
    assert max_reiner_deviation(3, 3) == Fraction(25, 27)
    assert all(isinstance(d, Fraction) for d in reiner_deviations(3, 2).values())


def test_single_fiber_lookup():
    assert count_charpoly_fiber_fp(FpPoly([1, 0, 1], 3), 2) == 6
    with pytest.raises(ValueError):
        count_charpoly_fiber_fp(FpPoly([1, 1], 3), 2)


def test_fp_matrix():
    A = FpMatrix([[1, 2], [3, 4]], 5)
    assert A.rows == ((1, 2), (3, 4))
    assert A.char_poly() == FpPoly([-2, -5, 1], 5)
    with pytest.raises(ValueError):
        FpMatrix([[1]], 6)


def test_guard():
    with pytest.raises(GuardError):
        charpoly_fiber_table(4, 13)
    with pytest.raises(ValueError):
        charpoly_fiber_table(2, 4)


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("n", [2, 3])
def test_index_distribution_matches_sympy(p, n):
    expect = {}
    for low in itertools.product(range(p), repeat=n):
        poly = sympy.Poly(list(reversed(low + (1,))), X, modulus=p)
        _, facs = sympy.factor_list(poly)
        ind = sum((e - 1) * g.degree() for g, e in facs)
        expect[ind] = expect.get(ind, 0) + 1
    assert index_distribution(p, n) == expect


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_index_tail_n2_k1(p):
    assert index_tail_fraction(p, 2, 1) == Fraction(1, p)


def test_index_tail_bound_over_range():
    for p in (2, 3, 5, 7, 11, 13):
        for n in range(2, 5):
            for k in range(1, n):
                assert index_tail_fraction(p, n, k) <= Fraction(3, p**k)


def test_gaussian_binomial_counts_subspaces():
    assert gaussian_binomial(4, 2, 2) == 35
    for n, k, p in [(3, 1, 2), (3, 2, 3), (4, 2, 2), (2, 1, 5)]:
        subs = list(enumerate_subspaces(n, k, p))
        assert len(subs) == gaussian_binomial(n, k, p) == len(set(subs))


def test_gl_order_brute_force():
    for k, p in [(1, 5), (2, 2), (2, 3)]:
        count = sum(1 for m in all_matrices(k, p) if rank_mod_p(m.tolist(), p) == k)
        assert gl_order(k, p) == count


def test_unit_group_order():
    assert unit_group_order(FpPoly([1, 0, 1], 3)) == 8
    assert unit_group_order(FpPoly([1, 0, 1], 5)) == 16
    with pytest.raises(ValueError):
        unit_group_order(FpPoly([1, 2, 1], 3))


def test_conjugacy_class_size_is_gl_over_units():
    # number of matrices with squarefree char poly g equals |GL_k| / |(F_p[x]/g)^*|
    for coeffs, p in [((1, 0, 1), 3), ((1, 0, 1), 5), ((2, 1, 1), 3), ((1, 1, 0, 1), 2)]:
        g = FpPoly(coeffs, p)
        assert charpoly_fiber_table(g.degree, p)[g.coeffs] == gl_order(g.degree, p) // unit_group_order(g)


def test_subspace_validation():
    FpSubspace(3, ((1, 0),))
    with pytest.raises(ValueError):
        FpSubspace(3, ((2, 0),))
    with pytest.raises(ValueError):
        FpSubspace(3, ((1, 0), (1, 0)))
    s = FpSubspace.span([[2, 4, 0]], 5)
    assert s.basis == ((1, 2, 0),) and s.contains([3, 1, 0]) and not s.contains([0, 0, 1])


def brute_dft(values, n, p):
    """hat(B) = p^(-n^2) sum_A psi(A) e(-tr(AB)/p), plain loops."""
    mats = [np.array(m).reshape(n, n) for m in itertools.product(range(p), repeat=n * n)]
    flat = values.reshape(-1)
    out = np.zeros(len(mats), dtype=complex)
    live = [(A, flat[i]) for i, A in enumerate(mats) if flat[i]]
    for j, B in enumerate(mats):
        s = sum(v * cmath.exp(-2j * cmath.pi * (int(np.trace(A @ B)) % p) / p) for A, v in live)
        out[j] = s / p ** (n * n)
    return out.reshape(values.shape)


@pytest.mark.parametrize("p,n,basis,C", [
    (3, 2, ((1, 0),), ((1,),)),
    (3, 2, ((1, 2),), ((0,),)),
    (2, 2, ((0, 1),), ((1,),)),
    (2, 3, ((1, 0, 1), (0, 1, 1)), ((0, 1), (1, 1))),
])
def test_selector_transform_against_brute_force(p, n, basis, C):
    spec = SelectorSpec(FpSubspace(p, basis), C)
    hat = selector_dft(spec)
    assert np.allclose(hat, brute_dft(selector_values(spec), n, p), atol=1e-12)
    k = len(basis)
    assert hat.reshape(-1)[0].real == pytest.approx(p ** (-k * n), abs=1e-15)
    assert np.array_equal(support(hat), expected_support(spec.subspace, "column"))


def test_selector_report_p3_n2_k1():
    rep = selector_report(SelectorSpec(FpSubspace(3, ((1, 0),)), ((2,),)))
    assert rep.zero_value == Fraction(1, 9)
    assert rep.support_size == 9 and rep.support_dimension == 2
    assert rep.column_orientation_match and not rep.row_orientation_match
    assert rep.parseval_error <= 1e-12 and rep.passed


def test_batch_rank_matches_scalar_rank():
    mats = all_matrices(3, 2)
    ranks = batch_rank_mod_p(mats, 2)
    assert [rank_mod_p(m.tolist(), 2) for m in mats] == ranks.tolist()
    rng = np.random.default_rng(0)
    m5 = rng.integers(0, 5, size=(200, 3, 3))
    for m, r in zip(m5, batch_rank_mod_p(m5, 5)):
        assert r == rank_mod_p(m.tolist(), 5)


def test_psi_g_counts_pairs():
    g = FpPoly([-1, 1], 3)  # x - 1
    psi, pairs = psi_g_values(g, 2)
    assert pairs == gaussian_binomial(2, 1, 3)
    # Psi_g(A) = number of invariant lines on which A acts by 1 = number of eigenlines for 1
    for m, v in zip(all_matrices(2, 3), psi.tolist()):
        ker = 2 - rank_mod_p(((m - np.eye(2, dtype=np.int64)) % 3).tolist(), 3)
        assert v == (3**ker - 1) // 2


@pytest.mark.parametrize("p,n,g", [(3, 2, (2, 1)), (3, 2, (1, 0, 1)), (2, 3, (1, 1, 1)), (3, 3, (1, 0, 1))])
def test_psi_g_transform_vanishes_above_rank_k(p, n, g):
    rep = selector_g_rank_support(FpPoly(g, p), n)
    assert rep.vanishes_above_k and rep.passed
    assert rep.max_by_rank[0] > 0
