# Commutant of S_d on (C^n)^d versus the image of U(gl_n).
from heckelab.schur_weyl import schur_weyl_check

print(" n  d  commutant  image  sum dim^2")
for n, d in [(1, 3), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3)]:
    r = schur_weyl_check(n, d)
    print(f"{n:2d} {d:2d} {r.commutant_dim:10d} {r.image_dim:6d} {r.theoretical_dim:10d}")
