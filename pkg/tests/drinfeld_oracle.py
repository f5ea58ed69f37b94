"""Independent oracle for Drinfeld polynomials of diagonal s in the Jordan basis.

Kernel and image flags of a Jordan-form nilpotent are coordinate subspaces,
so the quotient F_max_i / F_min_i has a coordinate basis and s acts on it
diagonally: P_i(u) is a product of linear factors.
"""

from heckelab.laurent import LaurentPoly


def coordinate_drinfeld(jordan_type, s, n, variables):
    blocks, start = [], 0
    for b in jordan_type:
        blocks.append(list(range(start, start + b)))
        start += b
    u = LaurentPoly.var(variables, variables[0])
    out = []
    for i in range(1, n + 1):
        ker = {c for blk in blocks for c in blk[:i]}
        img = {c for blk in blocks for c in blk[:max(len(blk) - (n - i), 0)]}
        p = LaurentPoly.one(variables)
        for c in sorted(ker - img):
            p = p * (u - s[c])
        out.append(p)
    return out
