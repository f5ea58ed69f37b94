# The convolution algebra on M x_N M for a map of finite sets.
from heckelab.convolution import FiniteMap, Kernel, action_rank, convolve, steinberg_algebra

f = Kernel.from_matrix([[1, 0, 2], [0, 1, 1]])
g = Kernel.from_matrix([[1, 1], [2, 0], [0, 3]])
print([[str(v) for v in row] for row in convolve(f, g).to_matrix()])

mu = FiniteMap((1, 2, 3), ("a", "b"), {1: "a", 2: "a", 3: "b"})
alg = steinberg_algebra(mu)
print("blocks", alg.block_sizes, "dimension", alg.dimension, "commutative", alg.is_commutative())
for x in mu.target:
    print("fiber", x, "rank of the action", action_rank(mu, x))
