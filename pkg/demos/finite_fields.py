"""Characteristic-polynomial fibers, index tails and selector transforms over F_p."""

from fractions import Fraction

from matgalois.exactalg import FpPoly, IntPoly
from matgalois.fpcensus import (
    FpSubspace,
    SelectorSpec,
    charpoly_fiber_table,
    index_tail_fraction,
    max_reiner_deviation,
    selector_g_rank_support,
    selector_report,
)

print("2x2 matrices over F_3 by characteristic polynomial:")
for f, c in sorted(charpoly_fiber_table(2, 3).items()):
    print(f"  {str(IntPoly(f)):12s} {c}")
for n, q in [(2, 5), (3, 2), (3, 3)]:
    print(f"max |fiber/q^(n^2-n) - 1| for n={n}, q={q}: {max_reiner_deviation(n, q)}")

print("fraction of monic quartics mod p with index >= k, times p^k:")
for p in (2, 3, 5, 7):
    print(f"  p={p}: " + "  ".join(str(index_tail_fraction(p, 4, k) * p**k) for k in (1, 2, 3)))

spec = SelectorSpec(FpSubspace(3, ((1, 0),)), ((1,),))
rep = selector_report(spec)
print(f"selector on F_3^2, line e1, C=(1): hat(0) = {rep.zero_value}, support {rep.support_size} points")
rk = selector_g_rank_support(FpPoly([-1, 1], 3), 2)
for r, m in rk.max_by_rank.items():
    print(f"  rank {r}: {rk.count_by_rank[r]:3d} frequencies, max |coefficient| {m:.3g}")
assert rep.zero_value == Fraction(1, 9)
