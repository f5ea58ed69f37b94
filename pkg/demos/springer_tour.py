# Counting x-stable partial flags over F_q and reading off component counts.
from heckelab.roots import irrep_dimension, partitions
from heckelab.springer import (
    FlagType, JordanData, component_count, count_fixed_flags, dominant_weight, drinfeld_polynomials,
    single_block_input,
)

# x = 0 on C^2: all lines, so q + 1 points
x = JordanData((1, 1))
print([count_fixed_flags(x, FlagType(2, (1, 1)), q) for q in (2, 3, 4, 5, 7)])

#%%
# top-dimensional components versus dimensions of gl_n irreps
for d in range(1, 5):
    for lam in partitions(d):
        x = JordanData(tuple(lam))
        total, _ = component_count(x, "ALL", d)
        hw = dominant_weight(x, d)
        print(f"{str(tuple(lam)):14s} weight {hw}  components {total}  dim {irrep_dimension(hw, d)}")

#%%
# Drinfeld polynomials of a single Jordan block J_2 with s = diag(q a, a)
for n in (2, 3, 4):
    print(n, [p.to_str() for p in drinfeld_polynomials(single_block_input(2), n)])
