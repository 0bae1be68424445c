"""Polynomials over a prime field and their factorization.

Low-level routines work on plain coefficient lists (constant term first,
entries already reduced mod p). ``FpPoly`` is the checked wrapper.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .intpoly import IntPoly
from .primes import is_prime

Coeffs = list


@lru_cache(maxsize=4096)
def _checked_prime(p: int) -> int:
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    return p


def _strip(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def reduce(a: Iterable[int], p: int) -> list[int]:
    return _strip([c % p for c in a])


def add(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return _strip(out)


def sub(a, b, p):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _strip(out)


def mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _strip([c % p for c in out])


def scale(a, k, p):
    return _strip([c * k % p for c in a])


def monic(a, p):
    if not a:
        return []
    return scale(a, pow(a[-1], -1, p), p)


def divmod_p(a, b, p):
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], r
    inv = pow(b[-1], -1, p)
    q = [0] * (len(r) - db)
    for i in range(len(r) - 1 - db, -1, -1):
        c = r[i + db] * inv % p
        if c:
            q[i] = c
            for j, bj in enumerate(b):
                r[i + j] = (r[i + j] - c * bj) % p
    return _strip(q), _strip(r[:db])


def rem(a, b, p):
    return divmod_p(a, b, p)[1]


def gcd(a, b, p):
    a, b = reduce(a, p), reduce(b, p)
    while b:
        a, b = b, rem(a, b, p)
    return monic(a, p)


def ext_gcd(a, b, p):
    """Return (g, s, t) with s*a + t*b = g monic."""
    r0, r1 = list(a), list(b)
    s0, s1, t0, t1 = [1], [], [], [1]
    while r1:
        q, r = divmod_p(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    inv = pow(r0[-1], -1, p)
    return scale(r0, inv, p), scale(s0, inv, p), scale(t0, inv, p)


def powmod(base, e, mod, p):
    out = [1]
    base = rem(base, mod, p)
    while e:
        if e & 1:
            out = rem(mul(out, base, p), mod, p)
        base = rem(mul(base, base, p), mod, p)
        e >>= 1
    return out


def deriv(a, p):
    return _strip([i * c % p for i, c in enumerate(a)][1:])


def squarefree_decomposition(f, p):
    """Monic f -> list of (squarefree part, multiplicity), parts coprime."""
    out = []
    c = gcd(f, deriv(f, p), p)
    w = divmod_p(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = gcd(w, c, p)
        z = divmod_p(w, y, p)[0]
        if len(z) > 1:
            out.append((z, i))
        i += 1
        w = y
        c = divmod_p(c, y, p)[0]
    if len(c) > 1:
        # c = g(x^p); over F_p the p-th root just subsamples coefficients
        root = [c[i] for i in range(0, len(c), p)]
        out.extend((g, j * p) for g, j in squarefree_decomposition(root, p))
    return out


def distinct_degree(f, p):
    out = []
    x = [0, 1]
    h = x
    d = 1
    while len(f) - 1 >= 2 * d:
        h = powmod(h, p, f, p)
        g = gcd(f, sub(h, x, p), p)
        if len(g) > 1:
            out.append((g, d))
            f = divmod_p(f, g, p)[0]
            h = rem(h, f, p)
        d += 1
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def equal_degree(f, d, p, rng: random.Random):
    """Cantor-Zassenhaus split of a product of degree-d irreducibles."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = _strip([rng.randrange(p) for _ in range(n)])
        if len(a) < 2:
            continue
        if p == 2:
            b, t = list(a), list(a)
            for _ in range(d - 1):
                t = rem(mul(t, t, p), f, p)
                b = add(b, t, p)
        else:
            b = sub(powmod(a, (p**d - 1) // 2, f, p), [1], p)
        g = gcd(f, b, p)
        if 0 < len(g) - 1 < n:
            h = divmod_p(f, g, p)[0]
            return equal_degree(g, d, p, rng) + equal_degree(h, d, p, rng)


def factor_list(f, p, seed: int = 0):
    """Monic f -> sorted list of (irreducible factor, multiplicity)."""
    rng = random.Random(seed)
    out = []
    for part, mult in squarefree_decomposition(f, p):
        for block, d in distinct_degree(part, p):
            out.extend((g, mult) for g in equal_degree(block, d, p, rng))
    out.sort(key=lambda gm: (len(gm[0]), gm[0], gm[1]))
    return out


def factor_degrees(f, p):
    """Degree multiset of the irreducible factors of a squarefree monic f.

    Cheaper than a full factorization: distinct-degree splitting only.
    """
    degs = []
    for block, d in distinct_degree(f, p):
        degs.extend([d] * ((len(block) - 1) // d))
    return sorted(degs)


def index_list(f, p) -> int:
    n = len(f) - 1
    return n - sum(len(z) - 1 for z, _ in squarefree_decomposition(f, p))


class FpPoly:
    """Polynomial over F_p with reduced coefficients (constant term first)."""

    __slots__ = ("p", "coeffs")

    def __init__(self, coeffs: Iterable[int], p: int):
        self.p = _checked_prime(p)
        self.coeffs = tuple(reduce(coeffs, p))

    @classmethod
    def from_int(cls, f: IntPoly, p: int) -> FpPoly:
        return cls(f.coeffs, p)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self) -> bool:
        return self.lc == 1

    def monic(self) -> FpPoly:
        return FpPoly(monic(list(self.coeffs), self.p), self.p)

    def __eq__(self, other):
        return isinstance(other, FpPoly) and (self.p, self.coeffs) == (other.p, other.coeffs)

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __repr__(self):
        return f"FpPoly({list(self.coeffs)}, p={self.p})"

    def _same(self, other: FpPoly):
        if other.p != self.p:
            raise ValueError("moduli differ")

    def __add__(self, other: FpPoly) -> FpPoly:
        self._same(other)
        return FpPoly(add(self.coeffs, other.coeffs, self.p), self.p)

    def __sub__(self, other: FpPoly) -> FpPoly:
        self._same(other)
        return FpPoly(sub(self.coeffs, other.coeffs, self.p), self.p)

    def __mul__(self, other: FpPoly) -> FpPoly:
        self._same(other)
        return FpPoly(mul(self.coeffs, other.coeffs, self.p), self.p)

    def __pow__(self, e: int) -> FpPoly:
        out = [1]
        for _ in range(e):
            out = mul(out, self.coeffs, self.p)
        return FpPoly(out, self.p)

    def __divmod__(self, other: FpPoly):
        self._same(other)
        q, r = divmod_p(list(self.coeffs), list(other.coeffs), self.p)
        return FpPoly(q, self.p), FpPoly(r, self.p)

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def derivative(self) -> FpPoly:
        return FpPoly(deriv(self.coeffs, self.p), self.p)

    def gcd(self, other: FpPoly) -> FpPoly:
        self._same(other)
        return FpPoly(gcd(self.coeffs, other.coeffs, self.p), self.p)

    def is_squarefree(self) -> bool:
        return self.gcd(self.derivative()).degree == 0

    def is_irreducible(self) -> bool:
        fac = factor_mod_p(self)
        return len(fac.factors) == 1 and fac.factors[0][1] == 1


@dataclass(frozen=True)
class FpFactorization:
    p: int
    factors: tuple  # ((FpPoly, multiplicity), ...)
    unit: int = 1

    def product(self) -> FpPoly:
        out = FpPoly([self.unit], self.p)
        for g, e in self.factors:
            out = out * g**e
        return out

    def degrees(self) -> list[int]:
        return sorted(g.degree for g, e in self.factors for _ in range(e))


def factor_mod_p(f: FpPoly, seed: int = 0) -> FpFactorization:
    """Complete factorization over F_p.

    A non-monic input is normalized by its leading unit, which is kept in
    ``unit`` so that ``product()`` reconstructs the input.
    """
    if f.degree < 0:
        raise ValueError("cannot factor the zero polynomial")
    p = f.p
    unit = f.lc
    if f.degree == 0:
        return FpFactorization(p, (), unit)
    g = monic(list(f.coeffs), p)
    factors = tuple((FpPoly(h, p), e) for h, e in factor_list(g, p, seed))
    return FpFactorization(p, factors, unit)


def poly_index_mod_p(f: FpPoly) -> int:
    """ind f = sum (e_i - 1) deg f_i; zero exactly when f is squarefree."""
    if not f.is_monic():
        raise ValueError("poly_index_mod_p expects a monic polynomial")
    return index_list(list(f.coeffs), f.p)


def is_squarefree_mod_p(coeffs: Sequence[int], p: int) -> bool:
    f = reduce(coeffs, p)
    return len(gcd(f, deriv(f, p), p)) == 1
