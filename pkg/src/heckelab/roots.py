"""Cartan data, Weyl groups and the gl_n tableau oracle.

Weights are integer vectors in fundamental-weight coordinates, so the
pairing with the coroot of ``alpha_i`` is just coordinate ``i``.  The
simple root ``alpha_i`` is column ``i`` of the Cartan matrix (entry
``A[i][j] = <alpha_i^vee, alpha_j>``).  Indices exposed to users are
1-based, matching the usual ``s_1, ..., s_r`` notation.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations

import numpy as np


class CartanError(ValueError):
    pass


def _det(m: list[list[Fraction]]) -> Fraction:
    m = [row[:] for row in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                for k in range(c, n):
                    m[r][k] -= f * m[c][k]
    return det


@dataclass(frozen=True)
class CartanData:
    cartan_matrix: tuple[tuple[int, ...], ...]
    type_label: str | None = None

    def __post_init__(self):
        a = tuple(tuple(int(x) for x in row) for row in self.cartan_matrix)
        object.__setattr__(self, "cartan_matrix", a)
        n = len(a)
        if n == 0 or any(len(row) != n for row in a):
            raise CartanError("Cartan matrix must be square and nonempty")
        for i in range(n):
            if a[i][i] != 2:
                raise CartanError("diagonal entries must equal 2")
            for j in range(n):
                if i != j:
                    if a[i][j] > 0:
                        raise CartanError("off-diagonal entries must be <= 0")
                    if (a[i][j] == 0) != (a[j][i] == 0):
                        raise CartanError("a_ij = 0 must imply a_ji = 0")
        # finite type <=> every principal minor is positive
        for k in range(1, n + 1):
            for idx in combinations(range(n), k):
                sub = [[Fraction(a[i][j]) for j in idx] for i in idx]
                if _det(sub) <= 0:
                    raise CartanError("Cartan matrix is not of finite type")

    @property
    def rank(self) -> int:
        return len(self.cartan_matrix)

    @cached_property
    def matrix(self) -> np.ndarray:
        m = np.array(self.cartan_matrix, dtype=np.int64)
        m.setflags(write=False)
        return m

    @property
    def name(self) -> str:
        return self.type_label or "cartan" + "".join(str(x) for row in self.cartan_matrix for x in row)

    def simple_root(self, i: int) -> tuple[int, ...]:
        """alpha_i in fundamental-weight coordinates (1-based ``i``)."""
        return tuple(int(self.cartan_matrix[j][i - 1]) for j in range(self.rank))

    def fundamental_weight(self, i: int) -> tuple[int, ...]:
        return tuple(int(j == i - 1) for j in range(self.rank))

    def pairing(self, weight, i: int) -> int:
        """<weight, alpha_i^vee>."""
        return int(weight[i - 1])

    def braid_order(self, i: int, j: int) -> int:
        """m_ij read off from a_ij * a_ji."""
        if i == j:
            return 1
        prod = self.cartan_matrix[i - 1][j - 1] * self.cartan_matrix[j - 1][i - 1]
        return {0: 2, 1: 3, 2: 4, 3: 6}[prod]

    @cached_property
    def _reflection_matrices(self) -> tuple[np.ndarray, ...]:
        mats = []
        for i in range(1, self.rank + 1):
            s = np.eye(self.rank, dtype=np.int64)
            s[:, i - 1] -= np.array(self.simple_root(i), dtype=np.int64)
            s.setflags(write=False)
            mats.append(s)
        return tuple(mats)

    def reflection_matrix(self, i: int) -> np.ndarray:
        if not 1 <= i <= self.rank:
            raise IndexError(f"simple index {i} out of range 1..{self.rank}")
        return self._reflection_matrices[i - 1]

    @cached_property
    def positive_roots(self) -> tuple[tuple[int, ...], ...]:
        """Positive roots in weight coordinates (found by orbit closure in root coordinates)."""
        n = self.rank
        a = self.cartan_matrix
        seen = set()
        queue = deque(tuple(int(k == i) for k in range(n)) for i in range(n))
        while queue:
            c = queue.popleft()
            if c in seen:
                continue
            seen.add(c)
            for i in range(n):
                pair = sum(a[i][j] * c[j] for j in range(n))
                d = list(c)
                d[i] -= pair
                d = tuple(d)
                if all(x >= 0 for x in d) and d not in seen:
                    queue.append(d)
        roots = [tuple(sum(a[r][j] * c[j] for j in range(n)) for r in range(n)) for c in seen]
        return tuple(sorted(roots))

    @cached_property
    def _root_sign(self) -> dict[tuple[int, ...], int]:
        out = {}
        for r in self.positive_roots:
            out[r] = 1
            out[tuple(-x for x in r)] = -1
        return out

    def is_positive_root(self, weight) -> bool:
        return self._root_sign[tuple(int(x) for x in weight)] > 0


def _series(label: str) -> CartanData:
    m = re.fullmatch(r"([ABCDG])_?(\d+)", label.strip().upper())
    if not m:
        raise CartanError(f"unknown Cartan type {label!r}")
    series, n = m.group(1), int(m.group(2))
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    if series == "G":
        if n != 2:
            raise CartanError("G series only has rank 2")
        return CartanData(((2, -1), (-3, 2)), "G2")
    if n < 1 or (series in "BC" and n < 2) or (series == "D" and n < 4):
        raise CartanError(f"invalid rank for type {series}")
    for i in range(n - 1):
        a[i][i + 1] = a[i + 1][i] = -1
    if series == "B":
        a[n - 1][n - 2] = -2
    elif series == "C":
        a[n - 2][n - 1] = -2
    elif series == "D":
        a[n - 2][n - 1] = a[n - 1][n - 2] = 0
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
    return CartanData(tuple(map(tuple, a)), f"{series}{n}")


@lru_cache(maxsize=None)
def cartan_type(label: str) -> CartanData:
    """Cartan data for labels like ``"A2"``, ``"B_2"``, ``"D4"``."""
    return _series(label)


def cartan_from_text(text: str, label: str | None = None) -> CartanData:
    """Read the small text format: rank on the first line, then matrix rows."""
    lines = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise CartanError("empty Cartan description")
    rank = int(lines[0][0])
    rows = lines[1:]
    if len(rows) != rank:
        raise CartanError(f"expected {rank} rows, got {len(rows)}")
    return CartanData(tuple(tuple(int(x) for x in r) for r in rows), label)


def cartan_to_text(cartan: CartanData) -> str:
    rows = [" ".join(str(x) for x in row) for row in cartan.cartan_matrix]
    return "\n".join([str(cartan.rank), *rows]) + "\n"


# -- Weyl group --------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class WeylElement:
    cartan: CartanData
    action: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.array(self.action, dtype=np.int64)
        m.setflags(write=False)
        object.__setattr__(self, "action", m)

    @cached_property
    def _key(self) -> bytes:
        return self.action.tobytes()

    def __eq__(self, other):
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.cartan == other.cartan and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(self.cartan, self.action @ other.action)

    def act(self, weight) -> tuple[int, ...]:
        return tuple(int(x) for x in self.action @ np.asarray(weight, dtype=np.int64))

    def inverse(self) -> "WeylElement":
        return weyl_from_word(list(reversed(self.reduced_word)), self.cartan)

    @cached_property
    def length(self) -> int:
        return sum(1 for r in self.cartan.positive_roots if not self.cartan.is_positive_root(self.act(r)))

    @cached_property
    def reduced_word(self) -> tuple[int, ...]:
        return tuple(reduced_word(self))

    def is_identity(self) -> bool:
        return bool((self.action == np.eye(self.cartan.rank, dtype=np.int64)).all())

    def __repr__(self):
        return f"WeylElement({list(self.reduced_word)})"


def identity(cartan: CartanData) -> WeylElement:
    return WeylElement(cartan, np.eye(cartan.rank, dtype=np.int64))


def weyl_from_word(word, cartan: CartanData) -> WeylElement:
    m = np.eye(cartan.rank, dtype=np.int64)
    for i in word:
        m = m @ cartan.reflection_matrix(int(i))
    return WeylElement(cartan, m)


def simple_reflection(cartan: CartanData, i: int) -> WeylElement:
    return WeylElement(cartan, cartan.reflection_matrix(i))


def length(w: WeylElement) -> int:
    return w.length


def reduced_word(w: WeylElement) -> list[int]:
    """Reduced word built left to right, always taking the smallest left descent."""
    word = []
    cur = w
    cartan = w.cartan
    while cur.length:
        for i in range(1, cartan.rank + 1):
            nxt = simple_reflection(cartan, i) * cur
            if nxt.length < cur.length:
                word.append(i)
                cur = nxt
                break
    return word


def reflect(i: int, weight, cartan: CartanData) -> tuple[int, ...]:
    """s_i(weight) = weight - <weight, alpha_i^vee> alpha_i."""
    if not 1 <= i <= cartan.rank:
        raise IndexError(f"simple index {i} out of range 1..{cartan.rank}")
    k = int(weight[i - 1])
    root = cartan.simple_root(i)
    return tuple(int(x) - k * r for x, r in zip(weight, root))


@lru_cache(maxsize=None)
def weyl_group(cartan: CartanData) -> tuple[WeylElement, ...]:
    """All elements, sorted by length and then reduced word."""
    start = identity(cartan)
    seen = {start}
    queue = deque([start])
    gens = [simple_reflection(cartan, i) for i in range(1, cartan.rank + 1)]
    while queue:
        w = queue.popleft()
        for s in gens:
            v = w * s
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return tuple(sorted(seen, key=lambda w: (w.length, w.reduced_word)))


def longest_element(cartan: CartanData) -> WeylElement:
    return max(weyl_group(cartan), key=lambda w: w.length)


def is_dominant(weight) -> bool:
    return all(int(x) >= 0 for x in weight)


# -- gl_n weights and tableaux ----------------------------------------------


def is_partition(parts) -> bool:
    return all(p >= 0 for p in parts) and all(a >= b for a, b in zip(parts, parts[1:]))


def _ssyt(shape: tuple[int, ...], n: int, content: tuple[int, ...] | None = None):
    """Yield semistandard tableaux (tuples of rows) of ``shape`` with entries 1..n."""
    shape = tuple(p for p in shape if p)
    if len(shape) > n:
        return
    # fill letter by letter: the cells holding letters <= k form a partition,
    # and consecutive shapes differ by a horizontal strip
    def strips(inner, outer_bound, size):
        # partitions mu with inner <= mu <= outer_bound, mu/inner a horizontal strip
        rows = len(outer_bound)
        inner = inner + (0,) * (rows - len(inner))

        def rec(r, prev_row_old, chosen):
            if r == rows:
                yield tuple(chosen)
                return
            lo = inner[r]
            hi = outer_bound[r]
            if r > 0:
                hi = min(hi, inner[r - 1])
            for v in range(lo, hi + 1):
                yield from rec(r + 1, v, chosen + [v])

        for mu in rec(0, None, []):
            if size is None or sum(mu) - sum(inner) == size:
                yield mu

    def fill(k, inner, rows):
        if k > n:
            if inner == shape:
                yield tuple(tuple(r) for r in rows)
            return
        size = None if content is None else content[k - 1]
        for mu in strips(inner, shape, size):
            new_rows = [list(r) for r in rows]
            for r, (a, b) in enumerate(zip(inner, mu)):
                new_rows[r].extend([k] * (b - a))
            yield from fill(k + 1, mu, new_rows)

    yield from fill(1, (0,) * len(shape), [[] for _ in shape])


def semistandard_tableaux(shape, n: int, content=None) -> list[tuple[tuple[int, ...], ...]]:
    return list(_ssyt(tuple(shape), n, None if content is None else tuple(content)))


def irrep_dimension(hw, n: int) -> int:
    """Dimension of the irreducible gl_n module of highest weight ``hw`` (SSYT count)."""
    hw = tuple(int(x) for x in hw)
    if not is_partition(hw):
        raise ValueError(f"highest weight {hw} is not dominant")
    return sum(1 for _ in _ssyt(hw, n))


def weight_multiplicity(hw, wt, n: int) -> int:
    """Kostka number K_{hw, wt}."""
    hw = tuple(int(x) for x in hw)
    wt = tuple(int(x) for x in wt)
    if not is_partition(hw):
        raise ValueError(f"highest weight {hw} is not dominant")
    if sum(hw) != sum(wt):
        raise ValueError("highest weight and weight have different sizes")
    if any(x < 0 for x in wt):
        return 0
    wt = wt + (0,) * (n - len(wt))
    if len(wt) > n:
        raise ValueError("weight has more than n parts")
    return sum(1 for _ in _ssyt(hw, n, wt))


def compositions(total: int, parts: int):
    """All compositions of ``total`` into ``parts`` nonnegative parts."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def partitions(total: int, max_part: int | None = None):
    if max_part is None:
        max_part = total
    if total == 0:
        yield ()
        return
    for first in range(min(total, max_part), 0, -1):
        for rest in partitions(total - first, first):
            yield (first,) + rest


def conjugate_partition(parts) -> tuple[int, ...]:
    parts = [p for p in parts if p]
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p > i) for i in range(parts[0]))


def gl_to_weight(parts) -> tuple[int, ...]:
    """gl_n weight (d_1..d_n) to sl_n fundamental-weight coordinates (A_{n-1})."""
    return tuple(int(a) - int(b) for a, b in zip(parts, parts[1:]))
