"""Factorization of monic integer polynomials (Zassenhaus).

Pick a prime where f stays squarefree, factor there, Hensel-lift the
factorization past twice the Landau-Mignotte bound and recombine by
trial division over subsets.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from . import fpoly as fp
from .intpoly import IntPoly, divmod_lists, landau_mignotte_bound
from .primes import primes

MAX_DEGREE = 8


class UnsupportedDegreeError(ValueError):
    pass


# -- rational polynomial helpers for the squarefree split -------------------

def _qstrip(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _qdivmod(a, b):
    r = [Fraction(c) for c in a]
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], _qstrip(r)
    q = [Fraction(0)] * (len(r) - db)
    for i in range(len(r) - 1 - db, -1, -1):
        c = r[i + db] / b[-1]
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                r[i + j] -= c * bj
    return _qstrip(q), _qstrip(r[:db])


def _qmonic(a):
    return [Fraction(c) / a[-1] for c in a]


def _qgcd(a, b):
    a, b = _qstrip([Fraction(c) for c in a]), _qstrip([Fraction(c) for c in b])
    while b:
        a, b = b, _qdivmod(a, b)[1]
    return _qmonic(a) if a else a


def _qderiv(a):
    return _qstrip([i * c for i, c in enumerate(a)][1:])


def _qsub(a, b):
    out = [Fraction(c) for c in a] + [Fraction(0)] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return _qstrip(out)


def _as_int(a) -> IntPoly:
    assert all(c.denominator == 1 for c in a), "monic factor of a monic integer poly"
    return IntPoly(int(c) for c in a)


def squarefree_parts(f: IntPoly) -> list[tuple[IntPoly, int]]:
    """Yun's algorithm over Q for monic f; parts are monic in Z[x]."""
    a = list(f.coeffs)
    da = _qderiv(a)
    g = _qgcd(a, da)
    b = _qdivmod(a, g)[0]
    c = _qdivmod(da, g)[0]
    d = _qsub(c, _qderiv(b))
    out = []
    i = 1
    while len(b) > 1:
        ai = _qgcd(b, d)
        b = _qdivmod(b, ai)[0]
        c = _qdivmod(d, ai)[0]
        d = _qsub(c, _qderiv(b))
        if len(ai) > 1:
            out.append((_as_int(ai), i))
        i += 1
    return out


# -- Hensel lifting --------------------------------------------------------

def _hensel_step(f, g, h, s, t, m):
    m2 = m * m
    e = fp.sub(f, fp.mul(g, h, m2), m2)
    q, r = fp.divmod_p(fp.mul(s, e, m2), h, m2)
    g_new = fp.add(g, fp.add(fp.mul(t, e, m2), fp.mul(q, g, m2), m2), m2)
    h_new = fp.add(h, r, m2)
    b = fp.sub(fp.add(fp.mul(s, g_new, m2), fp.mul(t, h_new, m2), m2), [1], m2)
    c, d = fp.divmod_p(fp.mul(s, b, m2), h_new, m2)
    s_new = fp.sub(s, d, m2)
    t_new = fp.sub(t, fp.add(fp.mul(t, b, m2), fp.mul(c, g_new, m2), m2), m2)
    return g_new, h_new, s_new, t_new


def hensel_lift(f, factors, p, modulus):
    """Lift monic factors of f mod p to monic factors mod ``modulus`` (a power of p)."""
    f = fp.reduce(f, modulus)
    if len(factors) == 1:
        return [f]
    k = len(factors) // 2
    g, h = [1], [1]
    for u in factors[:k]:
        g = fp.mul(g, u, p)
    for u in factors[k:]:
        h = fp.mul(h, u, p)
    one, s, t = fp.ext_gcd(g, h, p)
    assert one == [1]
    m = p
    fm = fp.reduce(f, p)
    while m < modulus:
        fm = fp.reduce(f, m * m)
        g, h, s, t = _hensel_step(fm, g, h, s, t, m)
        m *= m
    g, h = fp.reduce(g, modulus), fp.reduce(h, modulus)
    return hensel_lift(g, factors[:k], p, modulus) + hensel_lift(h, factors[k:], p, modulus)


# -- Zassenhaus -------------------------------------------------------------

def _choose_prime(f: IntPoly, tries: int = 5):
    best = None
    found = 0
    for p in primes(3):
        fm = fp.reduce(f.coeffs, p)
        if len(fp.gcd(fm, fp.deriv(fm, p), p)) != 1:
            continue
        n_factors = len(fp.factor_degrees(fm, p))
        if best is None or n_factors < best[1]:
            best = (p, n_factors)
        found += 1
        if n_factors == 1 or found >= tries:
            break
    return best[0]


def _symmetric(a, m):
    half = m // 2
    return [c - m if c > half else c for c in a]


def factor_squarefree_monic(f: IntPoly) -> list[IntPoly]:
    """Irreducible monic factors of a squarefree monic f (any degree)."""
    if f.degree <= 1:
        return [f]
    p = _choose_prime(f)
    modular = [g for g, _ in fp.factor_list(fp.reduce(f.coeffs, p), p)]
    if len(modular) == 1:
        return [f]
    bound = 2 * landau_mignotte_bound(f) + 1
    modulus = p
    while modulus <= bound:
        modulus *= p
    lifted = hensel_lift(list(f.coeffs), modular, p, modulus)

    found: list[IntPoly] = []
    rest = list(f.coeffs)
    size = 1
    while 2 * size <= len(lifted):
        for subset in combinations(range(len(lifted)), size):
            g = [1]
            for i in subset:
                g = fp.mul(g, lifted[i], modulus)
            g = _symmetric(g, modulus)
            if rest[0] != 0 and (g[0] == 0 or rest[0] % g[0]):
                continue
            try:
                q, r = divmod_lists(rest, g)
            except ArithmeticError:
                continue
            if not r:
                found.append(IntPoly(g))
                rest = q
                lifted = [u for i, u in enumerate(lifted) if i not in subset]
                break
        else:
            size += 1
    found.append(IntPoly(rest))
    return found


def _factor_monic(f: IntPoly) -> list[tuple[IntPoly, int]]:
    out = []
    for part, mult in squarefree_parts(f):
        for g in factor_squarefree_monic(part):
            out.append((g, mult))
    out.sort(key=lambda gm: (gm[0].degree, gm[0].coeffs))
    return out


def factor_over_Z(f: IntPoly) -> list[tuple[IntPoly, int]]:
    """Factor a monic integer polynomial into monic irreducibles.

    Sorted by (degree, coefficients). Degrees above ``MAX_DEGREE`` are
    refused.
    """
    if not f.is_monic():
        raise ValueError("factor_over_Z expects a monic polynomial")
    if f.degree > MAX_DEGREE:
        raise UnsupportedDegreeError(f"degree {f.degree} above supported bound {MAX_DEGREE}")
    if f.degree <= 1:
        return [(f, 1)] if f.degree == 1 else []
    return _factor_monic(f)


def is_irreducible(f: IntPoly) -> bool:
    fac = _factor_monic(f)
    return len(fac) == 1 and fac[0][1] == 1
