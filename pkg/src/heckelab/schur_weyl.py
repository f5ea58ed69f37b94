"""Commuting actions of S_d and gl_n on (k^n)^(tensor d), with exact commutant and image dimensions."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product

from .linalg import SparseEchelon
from .roots import irrep_dimension, partitions

DEFAULT_GUARD = 100


class TensorSpace:
    """Basis e_phi indexed by maps phi: {1..d} -> {1..n}, in lexicographic order."""

    def __init__(self, n: int, d: int, guard: int | None = DEFAULT_GUARD):
        if n < 1 or d < 0:
            raise ValueError(f"need n >= 1 and d >= 0, got n={n}, d={d}")
        if guard is not None and n ** d > guard:
            raise ValueError(f"n^d = {n ** d} exceeds the size guard {guard}")
        self.n, self.d = n, d
        self.basis = list(product(range(1, n + 1), repeat=d))
        self.index = {phi: i for i, phi in enumerate(self.basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __repr__(self):
        return f"TensorSpace(n={self.n}, d={self.d})"


# Endomorphisms are sparse dicts {(row, col): int}; helpers convert to dense lists when needed.

def to_dense(m: dict, size: int):
    out = [[0] * size for _ in range(size)]
    for (r, c), v in m.items():
        out[r][c] = v
    return out


def matmul(a: dict, b: dict) -> dict:
    by_row = {}
    for (k, c), v in b.items():
        by_row.setdefault(k, []).append((c, v))
    out = {}
    for (r, k), v in a.items():
        for c, w in by_row.get(k, ()):
            out[(r, c)] = out.get((r, c), 0) + v * w
    return {k: v for k, v in out.items() if v}


def identity(space: TensorSpace) -> dict:
    return {(i, i): 1 for i in range(space.dim)}


def permutation_action(sigma, space: TensorSpace) -> dict:
    """Place permutation: e_phi -> e_(phi o sigma^-1).

    ``sigma`` is a tuple of images of 1..d (one-line notation).
    """
    d = space.d
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(1, d + 1)):
        raise ValueError(f"{sigma} is not a permutation of 1..{d}")
    inv = [0] * d
    for i, s in enumerate(sigma):
        inv[s - 1] = i
    out = {}
    for phi, col in space.index.items():
        image = tuple(phi[inv[k]] for k in range(d))
        out[(space.index[image], col)] = 1
    return out


def compose_perm(sigma, tau):
    """(sigma tau)(i) = sigma(tau(i))."""
    return tuple(sigma[t - 1] for t in tau)


def lie_action(i: int, j: int, space: TensorSpace) -> dict:
    """Derivation action of the matrix unit E_ij: sum over slots of E_ij in that slot."""
    n = space.n
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"E_({i},{j}) is not a matrix unit of gl_{n}")
    out = {}
    for phi, col in space.index.items():
        for k, v in enumerate(phi):
            if v == j:
                image = phi[:k] + (i,) + phi[k + 1:]
                key = (space.index[image], col)
                out[key] = out.get(key, 0) + 1
    return out


def commutator(a: dict, b: dict) -> dict:
    ab, ba = matmul(a, b), matmul(b, a)
    out = dict(ab)
    for k, v in ba.items():
        out[k] = out.get(k, 0) - v
    return {k: v for k, v in out.items() if v}


def perm_generators(d: int):
    """Adjacent transpositions (1-line notation)."""
    gens = []
    for k in range(1, d):
        s = list(range(1, d + 1))
        s[k - 1], s[k] = s[k], s[k - 1]
        gens.append(tuple(s))
    return gens


def lie_generators(space: TensorSpace):
    return [lie_action(i, j, space) for i in range(1, space.n + 1) for j in range(1, space.n + 1)]


def centralizer_dimension(mats, size: int) -> int:
    """dim {X : X A = A X for all A in mats}, by exact elimination on the entries of X."""
    ech = SparseEchelon()
    for A in mats:
        rows_of = {}
        cols_of = {}
        for (r, c), v in A.items():
            rows_of.setdefault(r, []).append((c, v))
            cols_of.setdefault(c, []).append((r, v))
        # (XA - AX)[i][j] = sum_k X[i][k] A[k][j] - sum_k A[i][k] X[k][j]
        for i in range(size):
            for j in range(size):
                eq = {}
                for k, v in cols_of.get(j, ()):
                    eq[i * size + k] = eq.get(i * size + k, 0) + v
                for k, v in rows_of.get(i, ()):
                    eq[k * size + j] = eq.get(k * size + j, 0) - v
                eq = {key: v for key, v in eq.items() if v}
                if eq:
                    ech.add(eq)
    return size * size - len(ech)


def commutant_dimension(n: int, d: int, guard: int | None = DEFAULT_GUARD) -> int:
    """Dimension of the algebra of endomorphisms commuting with S_d."""
    space = TensorSpace(n, d, guard)
    mats = [permutation_action(s, space) for s in perm_generators(d)]
    return centralizer_dimension(mats, space.dim)


def _flat(m: dict, size: int) -> dict:
    return {r * size + c: v for (r, c), v in m.items()}


def algebra_span_dimension(generators, size: int, include_unit: bool = True) -> int:
    """Dimension of the unital algebra generated by ``generators`` (span closure under products)."""
    ech = SparseEchelon()
    frontier = []
    start = ([{(i, i): 1 for i in range(size)}] if include_unit else []) + list(generators)
    for m in start:
        if ech.add(_flat(m, size)):
            frontier.append(m)
    while frontier:
        new = []
        for m in frontier:
            for g in generators:
                p = matmul(m, g)
                if p and ech.add(_flat(p, size)):
                    new.append(p)
        frontier = new
    return len(ech)


def enveloping_image_dimension(n: int, d: int, guard: int | None = DEFAULT_GUARD) -> int:
    """Dimension of the image of U(gl_n) in End((k^n)^(tensor d))."""
    space = TensorSpace(n, d, guard)
    return algebra_span_dimension(lie_generators(space), space.dim)


def theoretical_dimension(n: int, d: int) -> int:
    """Sum of (dim V_lambda)^2 over partitions of d with at most n rows."""
    total = 0
    for lam in partitions(d):
        if len(lam) <= n:
            total += irrep_dimension(tuple(lam) + (0,) * (n - len(lam)), n) ** 2
    return total


@dataclass
class SchurWeylReport:
    n: int
    d: int
    commutant_dim: int
    image_dim: int
    theoretical_dim: int
    actions_commute: bool
    group_algebra_dim: int | None = None
    image_centralizer_dim: int | None = None

    @property
    def passed(self) -> bool:
        ok = self.actions_commute and self.commutant_dim == self.image_dim == self.theoretical_dim
        if self.group_algebra_dim is not None:
            ok = ok and self.group_algebra_dim == self.image_centralizer_dim
        return ok

    def to_json(self):
        out = {
            "n": self.n,
            "d": self.d,
            "commutant_dim": self.commutant_dim,
            "image_dim": self.image_dim,
            "theoretical_dim": self.theoretical_dim,
            "pass": self.passed,
        }
        if self.group_algebra_dim is not None:
            out["group_algebra_dim"] = self.group_algebra_dim
            out["image_centralizer_dim"] = self.image_centralizer_dim
        return out


def schur_weyl_check(n: int, d: int, guard: int | None = DEFAULT_GUARD,
                     double_centralizer: bool = False) -> SchurWeylReport:
    space = TensorSpace(n, d, guard)
    perms = [permutation_action(s, space) for s in perm_generators(d)]
    lie = lie_generators(space)
    commute = all(not commutator(a, b) for a in lie for b in perms)
    comm = centralizer_dimension(perms, space.dim)
    image = algebra_span_dimension(lie, space.dim)
    report = SchurWeylReport(n, d, comm, image, theoretical_dimension(n, d), commute)
    if double_centralizer:
        # the other direction: centralizer of the gl_n image vs span of all place permutations
        ech = SparseEchelon()
        for s in permutations(range(1, d + 1)):
            ech.add(_flat(permutation_action(s, space), space.dim))
        report.group_algebra_dim = len(ech)
        report.image_centralizer_dim = centralizer_dimension(lie, space.dim)
    return report
