"""Square integer matrices and their characteristic polynomials."""

from __future__ import annotations

import json
from typing import Iterable, Sequence

from .intpoly import IntPoly


class IntMatrix:
    """Square matrix of Python integers; ``norm`` is the max-entry norm."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable[int]]):
        rows = tuple(tuple(int(a) for a in row) for row in rows)
        if not rows or any(len(r) != len(rows) for r in rows):
            raise ValueError("IntMatrix must be square and non-empty")
        self.rows = rows

    @classmethod
    def zero(cls, n: int) -> IntMatrix:
        return cls([[0] * n for _ in range(n)])

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, entries: Sequence[int]) -> IntMatrix:
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def parse(cls, text: str) -> IntMatrix:
        return cls(json.loads(text))

    def dumps(self) -> str:
        return json.dumps([list(r) for r in self.rows], separators=(",", ":"))

    @property
    def n(self) -> int:
        return len(self.rows)

    def norm(self) -> int:
        return max(abs(a) for row in self.rows for a in row)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.rows]})"

    def __add__(self, other: IntMatrix) -> IntMatrix:
        return IntMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        return IntMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __rmul__(self, k: int) -> IntMatrix:
        return IntMatrix([[k * a for a in r] for r in self.rows])

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        return IntMatrix(matmul(self.rows, other.rows))

    def transpose(self) -> IntMatrix:
        return IntMatrix(zip(*self.rows))

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def apply(self, v: Sequence[int]) -> list[int]:
        return [sum(a * b for a, b in zip(row, v)) for row in self.rows]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def char_poly_rows(rows: Sequence[Sequence[int]]) -> list[int]:
    """Faddeev-LeVerrier on integer rows; coefficients constant term first."""
    n = len(rows)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    m = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        m = matmul(rows, m)
        c = coeffs[n - k + 1]
        for i in range(n):
            m[i][i] += c
        am = matmul(rows, m)
        tr = sum(am[i][i] for i in range(n))
        q, r = divmod(-tr, k)
        assert r == 0, "Faddeev-LeVerrier division must be exact over Z"
        coeffs[n - k] = q
    return coeffs


def char_poly(a: IntMatrix) -> IntPoly:
    """det(xI - A) as a monic integer polynomial."""
    return IntPoly(char_poly_rows(a.rows))


def companion(f: IntPoly) -> IntMatrix:
    """Companion matrix whose characteristic polynomial is the monic f."""
    if not f.is_monic():
        raise ValueError("companion matrix needs a monic polynomial")
    n = f.degree
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = 1
    for i in range(n):
        rows[i][n - 1] = -f.coeffs[i]
    return IntMatrix(rows)


def block_diag(*blocks: IntMatrix) -> IntMatrix:
    n = sum(b.n for b in blocks)
    rows = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i in range(b.n):
            for j in range(b.n):
                rows[off + i][off + j] = b.rows[i][j]
        off += b.n
    return IntMatrix(rows)


def poly_of_matrix(g: IntPoly, a: IntMatrix) -> IntMatrix:
    """Evaluate g(A) by Horner's rule."""
    n = a.n
    acc = [[0] * n for _ in range(n)]
    for c in reversed(g.coeffs):
        acc = matmul(acc, a.rows)
        for i in range(n):
            acc[i][i] += c
    return IntMatrix(acc)
