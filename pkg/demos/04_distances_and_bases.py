"""
E-sequences, perspectivity and a homogeneous basis
==================================================

Hop between idempotents along L- and R-steps and count the hops. Classes
whose idempotents are at most three hops apart (starting with an L-step)
are exactly the perspective ones.
"""

# %%
import numpy as np

from biorder import (ComplementMap, FiniteSemigroup, build_biorder, build_matrix_ring,
                     build_modular_ring, distance, distance_table, homogeneous_basis_check,
                     matrix_unit_idempotents, quotient_lattice, verify_idpersp)

ring = build_matrix_ring(2, 2)
B = build_biorder(FiniteSemigroup.from_ring(ring))
T = distance_table(B)
e11 = ring.encode([[1, 0], [0, 0]])
e22 = ring.encode([[0, 0], [0, 1]])
print("d(E11, E22) =", distance(B, e11, e22))
values, counts = np.unique(T.d, return_counts=True)
print("distance histogram:", dict(zip(values.tolist(), counts.tolist())))

# %%
# E11 and E22 need three hops: no idempotent shares the row space of one
# and the column space of the other.
print(verify_idpersp(B, quotient_lattice(B, "left")).verdict)

# %%
# The four diagonal matrix units of M_4(GF(2)) form a homogeneous basis.
ring4 = build_matrix_ring(4, 2)
B4 = build_biorder(FiniteSemigroup.from_ring(ring4))
c4 = ComplementMap.from_ring(B4, ring4)
L4 = quotient_lattice(B4, "left")
cert = homogeneous_basis_check(L4, B4, c4, matrix_unit_idempotents(ring4))
print("basis:", cert.elements, "valid:", cert.valid, "n =", cert.n)
for name, ok in cert.conditions.items():
    print(f"  {name:>22}: {ok}")

# %%
# In Z6 the idempotents 3 and 4 are orthogonal and sum to 1, but their
# classes are not perspective, so the attempt stops at the third condition.
z6 = build_modular_ring(6)
Bz = build_biorder(FiniteSemigroup.from_ring(z6))
bad = homogeneous_basis_check(quotient_lattice(Bz, "left"), Bz,
                              ComplementMap.from_ring(Bz, z6), [3, 4])
print("Z6 {3, 4}: first failure", bad.first_failure)
