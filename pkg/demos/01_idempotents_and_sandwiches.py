"""
Idempotents and sandwich sets in 2x2 matrices over GF(2)
=========================================================

The ring has 16 elements. We find its idempotents, look at the two
quasi-orders on them and compute a few sandwich sets both ways.
"""

# %%
# Build the ring and its multiplicative semigroup. Matrices are stored as
# integers: the four entries, read row by row, are the binary digits.
from biorder import (FiniteSemigroup, build_biorder, build_matrix_ring, m_set,
                     sandwich_set)

ring = build_matrix_ring(2, 2)
S = FiniteSemigroup.from_ring(ring)
B = build_biorder(S)


def show(x):
    return ring.decode(x).tolist()


print("idempotents:", B.E.tolist())
for e in B.E.tolist():
    print(f"  {e:2d} = {show(e)}")

# %%
# ``omega_l`` holds (e, f) when ef = e; ``omega_r`` when fe = e. Each is a
# reflexive, transitive relation but neither is antisymmetric here.
print("omega_l pairs:", int(B.OL.sum()), " omega_r pairs:", int(B.OR.sum()))
print("omega (both) pairs:", int(B.OM.sum()))

# %%
# Sandwich sets. The abstract route takes the greatest elements of M(e, f)
# under a derived preorder; the semigroup route solves fhe = h, ehf = ef.
# They must agree.
e11 = ring.encode([[1, 0], [0, 0]])
e22 = ring.encode([[0, 0], [0, 1]])
for e, f in [(e11, e22), (e22, e11), (e11, e11)]:
    M = m_set(B, e, f).members
    a = sandwich_set(B, e, f, "abstract").members
    s = sandwich_set(B, e, f, "semigroup").members
    print(f"e={e} f={f}  M={M}  S_abstract={a}  S_semigroup={s}")

# %%
# Orthogonal idempotents have M(e, f) = {0}; that holds exactly when ef = 0.
zero = ring.zero_index
print("e11 e22 =", show(ring.mul(e11, e22)), " M =", m_set(B, e11, e22).members)
assert (ring.mul(e11, e22) == zero) == (m_set(B, e11, e22).members == (zero,))
