"""Convolution of kernels on finite sets and the algebra of M x_N M.

A kernel on M1 x M2 is a sparse map (m1, m2) -> Fraction together with the
two ordered label lists.  For a map mu: M -> N the kernels supported on
Z = {(a, b) : mu(a) = mu(b)} form an algebra that splits into one full
matrix block per fiber.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class FiniteMap:
    source: tuple
    target: tuple
    assignment: dict

    def __post_init__(self):
        object.__setattr__(self, "source", tuple(self.source))
        object.__setattr__(self, "target", tuple(self.target))
        if len(set(self.source)) != len(self.source) or len(set(self.target)) != len(self.target):
            raise ValueError("source and target labels must be distinct")
        missing = [m for m in self.source if m not in self.assignment]
        if missing:
            raise ValueError(f"map is not total: no image for {missing}")
        bad = [m for m in self.source if self.assignment[m] not in self.target]
        if bad:
            raise ValueError(f"images outside the target for {bad}")

    def __hash__(self):
        return hash((self.source, self.target, tuple(self.assignment[m] for m in self.source)))

    def __call__(self, m):
        return self.assignment[m]

    def fiber(self, x) -> tuple:
        if x not in self.target:
            raise KeyError(f"{x!r} is not in the target")
        return tuple(m for m in self.source if self.assignment[m] == x)

    def fibers(self) -> dict:
        return {x: self.fiber(x) for x in self.target}

    def fiber_product(self) -> list:
        """Z = M x_N M as a list of pairs."""
        return [(a, b) for a in self.source for b in self.source if self.assignment[a] == self.assignment[b]]

    @classmethod
    def from_list(cls, images: Sequence, target: Sequence | None = None) -> "FiniteMap":
        """Source is 0..len-1; target defaults to the sorted image."""
        source = tuple(range(len(images)))
        if target is None:
            target = tuple(sorted(set(images), key=repr))
        return cls(source, tuple(target), dict(zip(source, images)))


@dataclass
class Kernel:
    rows: tuple
    cols: tuple
    values: dict = field(default_factory=dict)
    support: frozenset | None = None

    def __post_init__(self):
        self.rows, self.cols = tuple(self.rows), tuple(self.cols)
        rs, cs = set(self.rows), set(self.cols)
        vals = {}
        for (a, b), v in self.values.items():
            if a not in rs or b not in cs:
                raise ValueError(f"entry {(a, b)} lies outside {self.rows} x {self.cols}")
            v = Fraction(v)
            if v:
                vals[(a, b)] = v
        self.values = vals
        if self.support is not None:
            self.support = frozenset(self.support)
            outside = [k for k in vals if k not in self.support]
            if outside:
                raise ValueError(f"values outside the declared support: {outside}")

    @classmethod
    def from_matrix(cls, matrix, rows=None, cols=None) -> "Kernel":
        rows = tuple(range(len(matrix))) if rows is None else tuple(rows)
        cols = tuple(range(len(matrix[0]) if matrix else 0)) if cols is None else tuple(cols)
        return cls(rows, cols, {(r, c): v for r, row in zip(rows, matrix) for c, v in zip(cols, row)})

    @classmethod
    def diagonal(cls, labels, value=1) -> "Kernel":
        labels = tuple(labels)
        return cls(labels, labels, {(m, m): value for m in labels})

    @classmethod
    def indicator(cls, rows, cols, pairs) -> "Kernel":
        pairs = list(pairs)
        return cls(rows, cols, {p: 1 for p in pairs}, frozenset(pairs))

    def to_matrix(self):
        return [[self.values.get((a, b), Fraction(0)) for b in self.cols] for a in self.rows]

    def nonzero_support(self) -> frozenset:
        return frozenset(self.values)

    def __eq__(self, other):
        return isinstance(other, Kernel) and (self.rows, self.cols, self.values) == (other.rows, other.cols, other.values)

    def __add__(self, other):
        self._same_shape(other)
        vals = dict(self.values)
        for k, v in other.values.items():
            vals[k] = vals.get(k, 0) + v
        return Kernel(self.rows, self.cols, vals)

    def __mul__(self, c):
        return Kernel(self.rows, self.cols, {k: v * Fraction(c) for k, v in self.values.items()})

    __rmul__ = __mul__

    def __matmul__(self, other):
        return convolve(self, other)

    def _same_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("kernels live on different products")

    def to_json(self):
        return {
            "rows": list(self.rows),
            "cols": list(self.cols),
            "entries": [[a, b, str(v)] for (a, b), v in sorted(self.values.items(), key=repr)],
        }

    @classmethod
    def from_json(cls, obj) -> "Kernel":
        rows = [_label(x) for x in obj["rows"]]
        cols = [_label(x) for x in obj["cols"]]
        return cls(rows, cols, {(_label(a), _label(b)): Fraction(v) for a, b, v in obj.get("entries", [])})


def _label(x):
    return tuple(x) if isinstance(x, list) else x


def convolve(f: Kernel, g: Kernel) -> Kernel:
    """(f * g)(m1, m3) = sum over m2 of f(m1, m2) g(m2, m3)."""
    if f.cols != g.rows:
        raise ValueError(f"middle sets differ: {f.cols} vs {g.rows}")
    by_row = {}
    for (m2, m3), v in g.values.items():
        by_row.setdefault(m2, []).append((m3, v))
    out = {}
    for (m1, m2), v in f.values.items():
        for m3, w in by_row.get(m2, ()):
            out[(m1, m3)] = out.get((m1, m3), 0) + v * w
    return Kernel(f.rows, g.cols, out)


def compose_supports(z12, z23) -> frozenset:
    """Set-theoretic composition {(a, c) : (a, b) in z12 and (b, c) in z23 for some b}."""
    by_first = {}
    for b, c in z23:
        by_first.setdefault(b, set()).add(c)
    return frozenset((a, c) for a, b in z12 for c in by_first.get(b, ()))


def graph(fn: dict) -> frozenset:
    return frozenset(fn.items())


@dataclass
class SteinbergAlgebra:
    mu: FiniteMap
    blocks: dict          # fiber label -> tuple of points in the fiber
    support: frozenset
    unit: Kernel

    @property
    def dimension(self) -> int:
        return len(self.support)

    @property
    def block_sizes(self) -> dict:
        return {x: len(b) for x, b in self.blocks.items()}

    def basis(self):
        """Elementary kernels, one per pair in Z."""
        M = self.mu.source
        return [Kernel(M, M, {z: 1}) for z in sorted(self.support, key=repr)]

    def block_unit(self, x) -> Kernel:
        M = self.mu.source
        return Kernel(M, M, {(m, m): 1 for m in self.blocks[x]})

    def contains(self, k: Kernel) -> bool:
        return k.rows == self.mu.source and k.cols == self.mu.source and k.nonzero_support() <= self.support

    def is_commutative(self) -> bool:
        return all(n <= 1 for n in self.block_sizes.values())

    def to_json(self):
        return {
            "source": list(self.mu.source),
            "target": list(self.mu.target),
            "blocks": {str(x): len(b) for x, b in self.blocks.items()},
            "dimension": self.dimension,
            "commutative": self.is_commutative(),
        }


def steinberg_algebra(mu: FiniteMap) -> SteinbergAlgebra:
    """Kernels on Z = M x_N M: one full matrix block per fiber; the unit is the diagonal."""
    blocks = {x: f for x, f in mu.fibers().items() if f}
    support = frozenset(mu.fiber_product())
    unit = Kernel.diagonal(mu.source)
    return SteinbergAlgebra(mu, blocks, support, unit)


def fiber_module_action(mu: FiniteMap, x, a: Kernel, v: Sequence) -> list:
    """Action of a kernel on Z on functions on the fiber M_x (vector indexed like mu.fiber(x))."""
    if x not in mu.target:
        raise KeyError(f"{x!r} is not in the target")
    fib = mu.fiber(x)
    if len(v) != len(fib):
        raise ValueError(f"vector has length {len(v)}, fiber has {len(fib)} points")
    if a.rows != mu.source or a.cols != mu.source:
        raise ValueError("kernel is not on M x M")
    Z = set(mu.fiber_product())
    outside = [k for k in a.values if k not in Z]
    if outside:
        raise ValueError(f"kernel is not supported on M x_N M: {outside}")
    return [sum((a.values.get((m, m2), 0) * Fraction(c) for m2, c in zip(fib, v)), Fraction(0)) for m in fib]


def action_rank(mu: FiniteMap, x) -> int:
    """Rank of the linear map (block x of the algebra) -> End(functions on M_x)."""
    from .linalg import rank

    alg = steinberg_algebra(mu)
    fib = mu.fiber(x)
    rows = []
    for z in sorted(alg.support, key=repr):
        a = Kernel(mu.source, mu.source, {z: 1})
        img = []
        for j in range(len(fib)):
            e = [0] * len(fib)
            e[j] = 1
            img += fiber_module_action(mu, x, a, e)
        rows.append(img)
    return rank(rows) if rows and rows[0] else 0


def map_from_json(obj) -> FiniteMap:
    source = [_label(m) for m in obj["source"]]
    target = [_label(t) for t in obj["target"]]
    assignment = obj["map"]
    if isinstance(assignment, dict):
        assignment = {_label(json.loads(k)) if k.startswith(("[", '"')) else _coerce_key(k, source): _label(v)
                      for k, v in assignment.items()}
    else:
        assignment = dict(zip(source, (_label(v) for v in assignment)))
    return FiniteMap(tuple(source), tuple(target), assignment)


def _coerce_key(k: str, source):
    for m in source:
        if str(m) == k:
            return m
    raise ValueError(f"unknown source label {k!r}")


def map_to_json(mu: FiniteMap):
    return {"source": list(mu.source), "target": list(mu.target), "map": [mu(m) for m in mu.source]}
