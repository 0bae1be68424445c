"""Dense univariate polynomials over the integers.

Coefficient lists are stored constant term first, so ``[-2, 0, 1]`` is
``x**2 - 2``. This is also the serialized form.
"""

from __future__ import annotations

import json
from math import comb, isqrt
from typing import Iterable, Sequence


def _strip(coeffs: list[int]) -> list[int]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


class IntPoly:
    """Immutable integer polynomial.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        self.coeffs = tuple(_strip([int(c) for c in coeffs]))

    @classmethod
    def x(cls) -> IntPoly:
        return cls((0, 1))

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> IntPoly:
        out = cls((1,))
        for r in roots:
            out = out * cls((-r, 1))
        return out

    @classmethod
    def parse(cls, text: str) -> IntPoly:
        """Read the decimal list form, e.g. ``"[-2,0,1]"``."""
        data = json.loads(text)
        if not isinstance(data, list) or not all(isinstance(c, int) for c in data):
            raise ValueError(f"not an integer coefficient list: {text!r}")
        return cls(data)

    def dumps(self) -> str:
        return "[" + ",".join(str(c) for c in self.coeffs) + "]"

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lc == 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == IntPoly((other,)).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("IntPoly", self.coeffs))

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{'*' + mono if mono else ''}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def _coerce(self, other) -> IntPoly:
        if isinstance(other, IntPoly):
            return other
        if isinstance(other, int):
            return IntPoly((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return IntPoly(mul_lists(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = IntPoly((1,))
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __divmod__(self, other: IntPoly):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        q, r = divmod_lists(self.coeffs, other.coeffs)
        return IntPoly(q), IntPoly(r)

    def __floordiv__(self, other: IntPoly):
        return divmod(self, other)[0]

    def __mod__(self, other: IntPoly):
        return divmod(self, other)[1]

    def derivative(self) -> IntPoly:
        return IntPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def shift(self, a: int) -> IntPoly:
        """Return f(x + a)."""
        out = IntPoly()
        for c in reversed(self.coeffs):
            out = out * IntPoly((a, 1)) + c
        return out

    def content(self) -> int:
        from math import gcd

        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def height(self) -> int:
        return max((abs(c) for c in self.coeffs), default=0)


def mul_lists(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _strip(out)


def divmod_lists(a: Sequence[int], b: Sequence[int]) -> tuple[list[int], list[int]]:
    """Division with remainder over the integers.

    Only exact when every quotient step divides, which always holds for
    a monic divisor; otherwise raises ``ArithmeticError``.
    """
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    if len(r) - 1 < db:
        return [], _strip(r)
    q = [0] * (len(r) - db)
    for i in range(len(r) - 1 - db, -1, -1):
        c = r[i + db]
        if c == 0:
            continue
        if c % lb:
            raise ArithmeticError("inexact polynomial division over Z")
        c //= lb
        q[i] = c
        for j, bj in enumerate(b):
            r[i + j] -= c * bj
    return _strip(q), _strip(r[:db])


def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free Gaussian elimination."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = (pivot * row_i[j] - mik * row_k[j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


def sylvester_matrix(f: Sequence[int], g: Sequence[int]) -> list[list[int]]:
    """Sylvester matrix of two coefficient lists (constant term first)."""
    m, d = len(f) - 1, len(g) - 1
    size = m + d
    fh, gh = list(reversed(f)), list(reversed(g))
    rows = []
    for i in range(d):
        rows.append([0] * i + fh + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gh + [0] * (size - d - 1 - i))
    return rows


def resultant(f: IntPoly, g: IntPoly) -> int:
    """Res(f, g) as the Sylvester determinant, via Bareiss elimination."""
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of the zero polynomial is undefined here")
    return bareiss_det(sylvester_matrix(f.coeffs, g.coeffs))


def discriminant(f: IntPoly) -> int:
    d = f.degree
    if d < 1:
        raise ValueError("discriminant needs degree >= 1")
    if d == 1:
        return 1
    res = resultant(f, f.derivative())
    q, r = divmod(res, f.lc)
    assert r == 0
    return -q if (d * (d - 1) // 2) % 2 else q


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def _divisors_upto(n: int, bound: int) -> list[int]:
    n = abs(n)
    if bound <= 1_000_000:
        return [d for d in range(1, min(n, bound) + 1) if n % d == 0]
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return [d for d in small + large[::-1] if d <= bound]


def rational_integer_roots(f: IntPoly, bound: int | None = None) -> list[int]:
    """Integer roots of a monic polynomial, repeated by multiplicity.

    ``bound`` restricts the search to ``[-bound, bound]``; for a
    characteristic polynomial of a matrix with norm T pass ``n*T``.
    """
    if not f.is_monic():
        raise ValueError("rational_integer_roots expects a monic polynomial")
    coeffs = list(f.coeffs)
    roots: list[int] = []
    while len(coeffs) > 1 and coeffs[0] == 0:
        coeffs.pop(0)
        roots.append(0)
    if len(coeffs) == 1:
        return sorted(roots)
    if bound is None:
        bound = 1 + max(abs(c) for c in coeffs[:-1])
    for d in _divisors_upto(coeffs[0], bound):
        for r in (d, -d):
            while len(coeffs) > 1:
                # synthetic division by (x - r)
                acc, quot = 0, []
                for c in reversed(coeffs):
                    acc = acc * r + c
                    quot.append(acc)
                if quot[-1] != 0:
                    break
                coeffs = list(reversed(quot[:-1]))
                roots.append(r)
    return sorted(roots)


def landau_mignotte_bound(f: IntPoly) -> int:
    """Integer upper bound on any coefficient of a monic factor of f."""
    norm2 = isqrt(sum(c * c for c in f.coeffs)) + 1
    d = f.degree
    return max(comb(d, i) for i in range(d + 1)) * norm2
