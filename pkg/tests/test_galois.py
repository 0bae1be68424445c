import pytest
import sympy

from matgalois import galois
from matgalois.exactalg import IntMatrix, IntPoly, companion
from matgalois.galois import (
    CERTIFIED_SN,
    NOT_SN,
    REDUCIBLE,
    UNCERTIFIED,
    cayley_resolvent,
    certify_full_symmetric,
    classify_charpoly,
    classify_poly,
    disc_is_square,
    galois_group_small,
)

from oracles import GALOIS_SET

X = sympy.Symbol("x")


@pytest.mark.parametrize("coeffs,group", GALOIS_SET)
def test_small_groups_match_frozen_oracle(coeffs, group):
    label = galois_group_small(IntPoly(coeffs))
    assert label.group == group


def test_frozen_oracle_still_agrees_with_sympy():
    names = {6: "S3", 3: "C3", 24: "S4", 12: "A4", 8: "D4", 120: "S5", 60: "A5", 20: "F20", 10: "D5", 5: "C5"}
    for coeffs, group in GALOIS_SET:
        if len(coeffs) == 3:
            continue
        G, _ = sympy.galois_group(sympy.Poly(list(reversed(coeffs)), X), by_name=False)
        expect = names.get(G.order()) or ("C4" if G.is_cyclic else "V4")
        assert expect == group


def test_disc_square():
    assert disc_is_square(IntPoly([1, -3, 0, 1]))
    assert not disc_is_square(IntPoly([-2, 0, 0, 1]))


def test_cayley_resolvent_has_rational_root_exactly_when_solvable():
    from matgalois.exactalg import rational_integer_roots

    for coeffs, group in GALOIS_SET:
        if len(coeffs) != 6:
            continue
        roots = rational_integer_roots(cayley_resolvent(IntPoly(coeffs)))
        assert bool(roots) == (group in ("F20", "D5", "C5"))


def test_reducible_inputs():
    f = IntPoly.from_roots([1, 2]) * IntPoly([1, 0, 1])
    label = galois_group_small(f)
    assert label.verdict == REDUCIBLE and label.degrees == (1, 1, 2)
    assert sum(label.degrees) == f.degree


def test_certify_x5_minus_x_minus_1_with_three_witnesses():
    label = certify_full_symmetric(IntPoly([-1, -1, 0, 0, 0, 1]), prime_budget=50)
    assert label.verdict == CERTIFIED_SN
    roles = {w.role for w in label.witnesses}
    assert roles == {"transitive", "transposition", "prime_cycle"}
    for w in label.witnesses:
        assert sum(w.degrees) == 5


def test_never_certifies_x4_plus_1():
    for budget in (1, 10, 50, 200):
        label = certify_full_symmetric(IntPoly([1, 0, 0, 0, 1]), prime_budget=budget)
        assert label.verdict != CERTIFIED_SN


def test_degree6_certification_needs_enough_primes():
    f = IntPoly([1, 1, 0, 0, 0, 0, 1])
    G, _ = sympy.galois_group(sympy.Poly(list(reversed(f.coeffs)), X), by_name=False)
    assert G.order() == 720
    # the transposition pattern first shows up between the 100th and 300th good prime
    assert classify_poly(f, prime_budget=100).verdict == UNCERTIFIED
    assert classify_poly(f, prime_budget=300).verdict == CERTIFIED_SN


def test_degree6_non_sn_is_not_certified():
    # x^6 + 1 factors over Z; x^6 - 3 (group of order 12) must never be certified
    label = classify_poly(IntPoly([-3, 0, 0, 0, 0, 0, 1]), prime_budget=300)
    assert label.verdict != CERTIFIED_SN


def test_inseparable_and_reducible_charpolys():
    assert classify_charpoly(IntMatrix.identity(3)).verdict == NOT_SN
    A = IntMatrix([[1, 0], [0, 2]])
    assert classify_charpoly(A).verdict == REDUCIBLE


def test_companion_classification():
    f = IntPoly([-1, -1, 0, 0, 0, 1])
    assert classify_charpoly(companion(f)).is_full_symmetric


def test_label_record_is_json_ready():
    rec = classify_poly(IntPoly([-1, -1, 0, 0, 0, 1])).to_record()
    assert rec["verdict"] == CERTIFIED_SN
    assert all(isinstance(w["p"], int) for w in rec["witnesses"])


def test_monic_required():
    with pytest.raises(ValueError):
        galois.galois_group_small(IntPoly([1, 0, 2]))
