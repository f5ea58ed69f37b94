# A short tour of the four Hecke-type algebras on small root systems.
from heckelab import algebra, degeneration_check, verify_realization
from heckelab.roots import longest_element

# finite Hecke algebra of A1: the quadratic relation
H = algebra("finite", "A1")
T = H.gen(1)
print("T1*T1 =", H.format(T * T))

# lengths add for reduced products in A2
H2 = algebra("finite", "A2")
print("T1*T2*T1 =", H2.format(H2.gen(1) * H2.gen(2) * H2.gen(1)))

# affine Hecke: pushing T1 past a lattice element
A = algebra("affine", "A1")
print("T1*Y(1) =", A.format(A.gen(1) * A.poly(A.y((1,)))))

# nil Hecke: the longest element kills every generator
N = algebra("nil", "B2")
w0 = N.basis(longest_element(N.cartan))
print("w0*r1 == 0:", w0 * N.gen(1) == N.zero())

#%%
# polynomial realizations, relation by relation
rep = verify_realization("affine", "A2", 3)
for r in rep.results[:6]:
    print(f"{r.relation:30s} {'ok' if r.passed else 'FAIL'}")
print("all relations hold:", rep.passed)

#%%
# q -> exp(eps): the lowest-order part of each affine relation
for r in degeneration_check("A1", 3):
    print(r.relation, "lowest degree", r.lowest_degree, r.lowest_part)
