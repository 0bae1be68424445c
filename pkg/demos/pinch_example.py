"""Reduced basis and pinch points of a rank-3 invariant lattice in Z^6."""

import sys

from matgalois import latticelab

T = int(sys.argv[1]) if len(sys.argv) > 1 else 100
vecs, A = latticelab.example_n6k3(T)
L = latticelab.PrimLattice(6, vecs)
rb = latticelab.reduce_basis(L)
print("reduced basis:")
for v, l2 in zip(rb.vectors, rb.sq_lengths):
    print(f"  {v}  |v|^2 = {l2}")
G = latticelab.restriction_matrix(A, rb)
print("A restricted to the lattice:", G.dumps())
for c in (1, 8):
    rep = latticelab.pinch_points(rb.sq_lengths, T, c=c, n=6)
    print(f"c={c}: pinch set {sorted(rep.pinches)}, exponent {rep.exponent}")
print("dimension of matrices preserving the lattice:", latticelab.invariant_space_dim(L))
