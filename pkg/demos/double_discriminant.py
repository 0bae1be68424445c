"""Double discriminants: shift invariance and divisibility at primes of large index."""

import random

from matgalois import ddsieve
from matgalois.exactalg import FpPoly, IntMatrix, char_poly, poly_index_mod_p

A = IntMatrix([[1, 2], [3, 4]])
print("DD of", A.dumps(), "=", ddsieve.double_discriminant(A), "(-16bc =", -16 * 2 * 3, ")")

B = IntMatrix([[2, -1, 0], [1, 3, 1], [0, 2, -1]])
S = ddsieve.shift_matrix(3)
print("inner discriminant in t:", ddsieve.dd_inner(B))
for m in (-2, 0, 5):
    print(f"  DD(B + {m}S) = {ddsieve.double_discriminant(B + m * S)}")

rng = random.Random(1)
for p in (5, 7, 11):
    M = ddsieve.forced_index_matrix(3, p, rng)
    ind = poly_index_mod_p(FpPoly(char_poly(M).coeffs, p))
    dd = ddsieve.double_discriminant(M)
    print(f"p={p}: index {ind}, DD mod p = {dd % p}, certificate {ddsieve.dd_divisibility_certificate(M, p, dd)}")

scan = ddsieve.dd_nonvanishing_scan(3, 1, samples=100)
print(f"3x3 entries in [-1,1]: {scan.zero}/{scan.scanned} sampled have DD = 0; witness {scan.witness.dumps()}")
