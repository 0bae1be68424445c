"""Small-modulus primality and prime iteration."""

from __future__ import annotations

from itertools import count
from typing import Iterator

# Deterministic for n < 3.4e14 with these witnesses.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17)
MR_LIMIT = 341_550_071_728_321


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n >= MR_LIMIT:
        raise ValueError(f"modulus {n} exceeds the deterministic Miller-Rabin range")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes(start: int = 2) -> Iterator[int]:
    for n in count(max(start, 2)):
        if is_prime(n):
            yield n


def primes_upto(limit: int) -> list[int]:
    return [p for p in range(2, limit + 1) if is_prime(p)]
