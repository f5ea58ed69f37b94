"""Exact linear algebra over Q and finite fields, plus exact interpolation."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


class Rationals:
    """Q with the same small interface as :class:`heckelab.finite_field.GF`."""

    zero = Fraction(0)
    one = Fraction(1)

    def __repr__(self):
        return "QQ"

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / Fraction(a)

    def from_int(self, n):
        return Fraction(n)

    def is_zero(self, a):
        return a == 0


QQ = Rationals()


def rref(rows: Iterable[Sequence], F=QQ):
    """Reduced row echelon form.  Returns (nonzero rows, pivot columns)."""
    M = [[F.from_int(x) if F is QQ else x for x in r] for r in rows]
    pivots = []
    if not M:
        return [], pivots
    ncols = len(M[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if not F.is_zero(M[i][c])), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][c])
        M[r] = [F.mul(inv, x) for x in M[r]]
        for i in range(len(M)):
            if i != r and not F.is_zero(M[i][c]):
                f = M[i][c]
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows, F=QQ) -> int:
    return len(rref(rows, F)[1])


def nullspace(rows, ncols: int, F=QQ):
    """Basis of {v : M v = 0}, one vector per free column."""
    R, pivots = rref(rows, F) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [F.zero] * ncols
        v[f] = F.one
        for row, p in zip(R, pivots):
            v[p] = F.neg(row[f])
        basis.append(v)
    return basis


def mat_mul(A, B, F=QQ):
    cols = list(zip(*B))
    out = []
    for row in A:
        new = []
        for col in cols:
            acc = F.zero
            for x, y in zip(row, col):
                if not F.is_zero(x) and not F.is_zero(y):
                    acc = F.add(acc, F.mul(x, y))
            new.append(acc)
        out.append(new)
    return out


def mat_vec(A, v, F=QQ):
    out = []
    for row in A:
        acc = F.zero
        for x, y in zip(row, v):
            if not F.is_zero(x) and not F.is_zero(y):
                acc = F.add(acc, F.mul(x, y))
        out.append(acc)
    return out


def reduce_mod_rref(v, R, pivots, F=QQ):
    """Reduce v modulo the row space of an RREF matrix; zero in pivot columns afterwards."""
    v = list(v)
    for row, p in zip(R, pivots):
        c = v[p]
        if not F.is_zero(c):
            v = [F.sub(x, F.mul(c, y)) for x, y in zip(v, row)]
    return v


def in_span(v, R, pivots, F=QQ) -> bool:
    return all(F.is_zero(x) for x in reduce_mod_rref(v, R, pivots, F))


class SparseEchelon:
    """Incremental echelon basis of sparse vectors (dicts index -> Fraction).

    ``add`` reduces a vector against the stored rows and keeps it when it is
    independent; the rank is the number of stored rows.
    """

    def __init__(self):
        self.rows: dict = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        v = {k: Fraction(c) for k, c in vec.items() if c}
        rows = self.rows
        while v:
            hits = [k for k in v if k in rows]
            if not hits:
                break
            k = min(hits)
            c = v[k]
            for j, y in rows[k].items():
                nv = v.get(j, 0) - c * y
                if nv:
                    v[j] = nv
                else:
                    v.pop(j, None)
        return v

    def add(self, vec: dict) -> bool:
        v = self.reduce(vec)
        if not v:
            return False
        k = min(v)
        c = v[k]
        self.rows[k] = {j: y / c for j, y in v.items()}
        return True


def sparse_rank(rows: Iterable[dict]) -> int:
    ech = SparseEchelon()
    for r in rows:
        ech.add(r)
    return len(ech)


def interpolate(xs: Sequence, ys: Sequence) -> list[Fraction]:
    """Coefficients (constant first) of the unique polynomial of degree < len(xs) through the points."""
    if len(xs) != len(ys):
        raise ValueError("xs and ys differ in length")
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    n = len(xs)
    # Newton divided differences, then expand
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        # poly = poly * (x - xs[i]) + coef[i]
        shifted = [Fraction(0)] + poly[:-1]
        poly = [s - xs[i] * p for s, p in zip(shifted, poly)]
        poly[0] += coef[i]
    return poly


def poly_eval(coeffs: Sequence, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc
