"""
The lattice of left classes
===========================

Idempotents e, f with ef = e and fe = f have the same row space. Grouping
them gives a lattice, which for matrices is the lattice of subspaces.
"""

# %%
from biorder import (ComplementMap, FiniteSemigroup, QuotientLattice, build_biorder,
                     build_matrix_ring, check_complemented, check_modular,
                     dual_isomorphism_check, quotient_lattice)
from biorder.export import lattice_hasse_dot
from biorder.lattice import check_subspace_lattice

ring = build_matrix_ring(3, 2)
B = build_biorder(FiniteSemigroup.from_ring(ring))
c = ComplementMap.from_ring(B, ring)
L = quotient_lattice(B, "left")
R = quotient_lattice(B, "right")
print(f"{B.k} idempotents fall into {L.size} left classes")
print("class sizes:", sorted(len(cl) for cl in L.classes))

# %%
# GF(2)^3 has 1 + 7 + 7 + 1 = 16 subspaces.
for rep in (check_subspace_lattice(L), check_modular(L), check_complemented(L, c),
            dual_isomorphism_check(L, R, c)):
    print(f"{rep.check:>20}: {rep.verdict}")

# %%
# The pentagon is the smallest lattice that is not modular. Feeding its
# order in directly shows what a failure looks like.
n5 = QuotientLattice.from_order(5, [(0, 1), (1, 3), (3, 4), (0, 2), (2, 4)])
bad = check_modular(n5)
print("N5 modular:", bad.verdict, "first triple:", bad.counterexamples[0])

# %%
# A Hasse diagram of the 2x2 case, ready for Graphviz.
B2 = build_biorder(FiniteSemigroup.from_ring(build_matrix_ring(2, 2)))
print(lattice_hasse_dot(quotient_lattice(B2, "left")))
