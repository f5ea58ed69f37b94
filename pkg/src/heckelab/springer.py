"""Partial flags fixed by a nilpotent: weights, extreme flags, point counts, Drinfeld polynomials.

A nilpotent ``x`` on k^d is always taken in Jordan normal form: coordinates
are grouped into blocks, and inside a block x e_1 = 0, x e_k = e_{k-1}.
Vectors are coordinate lists; subspaces are stored as RREF row bases.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Sequence

from .finite_field import GF, field as gf_field, prime_powers
from .laurent import LaurentPoly
from .linalg import QQ, in_span, interpolate, nullspace, poly_eval, rank, rref
from .roots import compositions, irrep_dimension, weight_multiplicity

DEFAULT_MAX_DIM = 4


# ---------------------------------------------------------------- data types

@dataclass(frozen=True)
class JordanData:
    """Nilpotent x on k^d in Jordan normal form."""

    jordan_type: tuple

    def __post_init__(self):
        jt = tuple(int(b) for b in self.jordan_type)
        if any(b <= 0 for b in jt):
            raise ValueError(f"Jordan blocks must be positive: {jt}")
        object.__setattr__(self, "jordan_type", tuple(sorted(jt, reverse=True)))

    @classmethod
    def parse(cls, text: str) -> "JordanData":
        return cls(tuple(int(t) for t in text.replace(" ", "").split(",") if t))

    @property
    def d(self) -> int:
        return sum(self.jordan_type)

    @property
    def largest_block(self) -> int:
        return self.jordan_type[0] if self.jordan_type else 0

    def blocks(self):
        """Coordinate index lists, one per block, in chain order e_1, e_2, ..."""
        out, start = [], 0
        for b in self.jordan_type:
            out.append(list(range(start, start + b)))
            start += b
        return out

    def matrix(self):
        d = self.d
        x = [[0] * d for _ in range(d)]
        for blk in self.blocks():
            for a, b in zip(blk, blk[1:]):
                x[a][b] = 1
        return x

    def apply(self, v, power: int = 1):
        """x^power applied to a coordinate vector (entries in any ring)."""
        out = [0] * len(v)
        for blk in self.blocks():
            for pos, idx in enumerate(blk):
                if pos + power < len(blk):
                    out[idx] = v[blk[pos + power]]
        return out

    def kernel_dim(self, power: int) -> int:
        return sum(min(b, power) for b in self.jordan_type)

    def kernel_coords(self, power: int):
        """ker x^power is spanned by the first ``power`` vectors of each block."""
        return sorted(i for blk in self.blocks() for i in blk[:power])

    def image_coords(self, power: int):
        """im x^power is spanned by the first ``b - power`` vectors of each block."""
        return sorted(i for blk in self.blocks() for i in blk[:max(len(blk) - power, 0)])

    def orbit_dim(self) -> int:
        """Complex dimension of the nilpotent orbit of x in gl_d."""
        conj = _conjugate(self.jordan_type)
        return self.d ** 2 - sum(c * c for c in conj)


def _conjugate(part):
    part = [p for p in part if p > 0]
    return [sum(1 for p in part if p > i) for i in range(part[0])] if part else []


@dataclass(frozen=True)
class FlagType:
    n: int
    dims: tuple

    def __post_init__(self):
        dims = tuple(int(x) for x in self.dims)
        if len(dims) != self.n:
            raise ValueError(f"flag type {dims} does not have {self.n} steps")
        if any(x < 0 for x in dims):
            raise ValueError(f"negative entry in flag type {dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def d(self) -> int:
        return sum(self.dims)

    def partial_sums(self):
        out, acc = [0], 0
        for x in self.dims:
            acc += x
            out.append(acc)
        return out

    def variety_dim(self) -> int:
        """dim of the variety of all flags of this type."""
        return sum(a * b for i, a in enumerate(self.dims) for b in self.dims[i + 1:])


@dataclass
class PartialFlag:
    """0 = F_0 <= F_1 <= ... <= F_n = k^d, each F_i an RREF row basis."""

    field: object
    d: int
    subspaces: list = dc_field(default_factory=list)

    def __post_init__(self):
        F = self.field
        canon = []
        for rows in self.subspaces:
            R, _ = rref(rows, F) if rows else ([], [])
            canon.append([list(r) for r in R])
        self.subspaces = canon
        if canon and canon[0]:
            raise ValueError("F_0 must be zero")
        if canon and len(canon[-1]) != self.d:
            raise ValueError("F_n must be the whole space")
        for a, b in zip(canon, canon[1:]):
            if not subspace_contains(b, a, F):
                raise ValueError("flag subspaces are not nested")

    @property
    def n(self) -> int:
        return len(self.subspaces) - 1

    def dims(self):
        return [len(s) for s in self.subspaces]

    def flag_type(self) -> FlagType:
        ds = self.dims()
        return FlagType(self.n, tuple(b - a for a, b in zip(ds, ds[1:])))

    def key(self):
        return tuple(tuple(tuple(r) for r in s) for s in self.subspaces)

    def __eq__(self, other):
        return isinstance(other, PartialFlag) and self.field == other.field and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def _pivots(R, F):
    out = []
    for r in R:
        out.append(next(i for i, x in enumerate(r) if not F.is_zero(x)))
    return out


def subspace_contains(big, small, F=QQ) -> bool:
    """big and small are RREF row bases."""
    piv = _pivots(big, F)
    return all(in_span(v, big, piv, F) for v in small)


def coordinate_subspace(coords, d, F=QQ):
    one, zero = F.one, F.zero
    return [[one if j == i else zero for j in range(d)] for i in sorted(coords)]


@dataclass
class DrinfeldInput:
    """Diagonal s (entries in the Jordan basis), scalar q and nilpotent x with s x s^-1 = q x."""

    s: list
    q: object
    x: JordanData

    def __post_init__(self):
        if len(self.s) != self.x.d:
            raise ValueError(f"s has {len(self.s)} entries but x acts on dimension {self.x.d}")


# ---------------------------------------------------------------- weights and extreme flags

def _check_steps(x: JordanData, n: int):
    if n < 1:
        raise ValueError("number of steps must be positive")
    if x.largest_block > n:
        raise ValueError(f"x^{n} != 0 for Jordan type {x.jordan_type}")


def dominant_weight(x: JordanData, n: int) -> tuple:
    """d_i = dim ker x^i - dim ker x^(i-1), i = 1..n."""
    _check_steps(x, n)
    return tuple(x.kernel_dim(i) - x.kernel_dim(i - 1) for i in range(1, n + 1))


def extreme_flags(x: JordanData, n: int, F=QQ):
    """(F_max, F_min) with F_max_i = ker x^i and F_min_i = im x^(n-i)."""
    _check_steps(x, n)
    d = x.d
    fmax = PartialFlag(F, d, [coordinate_subspace(x.kernel_coords(i), d, F) for i in range(n + 1)])
    fmin = PartialFlag(F, d, [coordinate_subspace(x.image_coords(n - i), d, F) for i in range(n + 1)])
    return fmax, fmin


def is_x_stable(flag: PartialFlag, x: JordanData) -> bool:
    """x(F_i) is contained in F_(i-1) for every i."""
    if flag.d != x.d:
        raise ValueError("flag and nilpotent act on different spaces")
    F = flag.field
    subs = flag.subspaces
    for lower, upper in zip(subs, subs[1:]):
        piv = _pivots(lower, F)
        for v in upper:
            if not in_span(x.apply(v), lower, piv, F):
                return False
    return True


# ---------------------------------------------------------------- point counts

def subspaces(dim: int, ambient: int, F: GF):
    """Every dim-dimensional subspace of F^ambient, once each, as an RREF basis."""
    q = F.q
    for piv in combinations(range(ambient), dim):
        pset = set(piv)
        free = [(r, c) for r, p in enumerate(piv) for c in range(p + 1, ambient) if c not in pset]
        for vals in product(range(q), repeat=len(free)):
            rows = [[0] * ambient for _ in range(dim)]
            for r, p in enumerate(piv):
                rows[r][p] = 1
            for (r, c), v in zip(free, vals):
                rows[r][c] = v
            yield rows


def _jordan_type_from_ranks(ranks, d):
    # ranks[k] = rank x^k; blocks of size >= k number rank(x^(k-1)) - rank(x^k)
    ge = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    out = []
    for k in range(len(ge)):
        exactly = ge[k] - (ge[k + 1] if k + 1 < len(ge) else 0)
        out += [k + 1] * exactly
    return tuple(sorted(out, reverse=True))


def quotient_jordan_type(x: JordanData, sub_rows, F: GF) -> tuple:
    """Jordan type of the nilpotent induced by x on k^d / S, S an x-stable subspace in RREF."""
    d = x.d
    piv = _pivots(sub_rows, F)
    comp = [j for j in range(d) if j not in set(piv)]
    if not comp:
        return ()

    def to_quotient(v):
        for row, p in zip(sub_rows, piv):
            c = v[p]
            if c:
                v = [F.sub(a, F.mul(c, b)) for a, b in zip(v, row)]
        return [v[j] for j in comp]

    m = len(comp)
    cols = []
    for j in comp:
        e = [0] * d
        e[j] = 1
        cols.append(to_quotient(x.apply(e)))
    xq = [list(r) for r in zip(*cols)]  # matrix with columns x(e_j) mod S
    ranks = [m]
    power = xq
    while ranks[-1] > 0:
        ranks.append(rank(power, F))
        if ranks[-1] == ranks[-2]:  # pragma: no cover
            raise ArithmeticError("induced map is not nilpotent")
        power = _mat_mul_ff(power, xq, F)
    return _jordan_type_from_ranks(ranks, m)


def _mat_mul_ff(A, B, F):
    cols = list(zip(*B))
    out = []
    for row in A:
        new = []
        for col in cols:
            acc = 0
            for a, b in zip(row, col):
                if a and b:
                    acc = F.add(acc, F.mul(a, b))
            new.append(acc)
        out.append(new)
    return out


def _guard(d, max_dim):
    if max_dim is not None and d > max_dim:
        raise ValueError(f"dimension {d} exceeds the feasibility guard {max_dim}")


def count_fixed_flags(x: JordanData, t: FlagType, q: int, max_dim: int | None = DEFAULT_MAX_DIM) -> int:
    """Number of x-stable flags of type t over F_q."""
    if t.d != x.d:
        raise ValueError(f"flag type {t.dims} is not a composition of {x.d}")
    _guard(x.d, max_dim)
    gf_field(q)  # validates q
    return _count(x.jordan_type, t.dims, q)


@lru_cache(maxsize=None)
def _count(jtype: tuple, dims: tuple, q: int) -> int:
    if not dims:
        return 1
    d1, rest = dims[0], dims[1:]
    x = JordanData(jtype)
    if d1 == 0:
        return _count(jtype, rest, q)
    ker = x.kernel_coords(1)
    if d1 > len(ker):
        return 0
    F = gf_field(q)
    d = x.d
    total = 0
    for rows in subspaces(d1, len(ker), F):
        full = [[0] * d for _ in rows]
        for r, row in enumerate(rows):
            for j, c in zip(ker, row):
                full[r][j] = c
        total += _count(quotient_jordan_type(x, full, F), rest, q)
    return total


def all_flags(t: FlagType, F: GF):
    """Every flag of type t in F^d (naive enumeration)."""
    d = t.d
    sums = t.partial_sums()

    def extend(chain):
        i = len(chain)
        if i == len(sums):
            yield chain
            return
        prev = chain[-1]
        for rows in subspaces(sums[i], d, F):
            if all(in_span(v, rows, _pivots(rows, F), F) for v in prev):
                yield from extend(chain + [rows])

    for chain in extend([[]]):
        yield PartialFlag(F, d, chain)


def count_fixed_flags_naive(x: JordanData, t: FlagType, q: int) -> int:
    """Oracle: enumerate every flag of type t and test stability directly."""
    F = gf_field(q)
    return sum(1 for fl in all_flags(t, F) if is_x_stable(fl, x))


# ---------------------------------------------------------------- component counts

def fiber_dimension(x: JordanData, t: FlagType) -> Fraction:
    """D = dim(all flags of type t) - dim(orbit of x) / 2."""
    return t.variety_dim() - Fraction(x.orbit_dim(), 2)


def default_nodes(count: int, max_q: int | None = None):
    out = []
    for q in prime_powers(2):
        if len(out) == count:
            break
        if max_q is not None and q > max_q:
            raise ValueError(f"need {count} prime powers <= {max_q}, found only {len(out)}")
        out.append(q)
    return out


@dataclass
class ComponentCount:
    jordan_type: tuple
    flag_type: tuple
    degree: int
    count: int
    coefficients: list
    nodes: list
    values: list
    held_out: int | None
    residual: Fraction

    def to_json(self):
        return {
            "jordan_type": list(self.jordan_type),
            "flag_type": list(self.flag_type),
            "degree": self.degree,
            "components": self.count,
            "polynomial": [str(c) for c in self.coefficients],
            "nodes": self.nodes,
            "counts": self.values,
            "held_out": self.held_out,
            "residual": str(self.residual),
        }


def component_count_type(x: JordanData, t: FlagType, max_dim: int | None = DEFAULT_MAX_DIM,
                         max_q: int | None = None) -> ComponentCount:
    """Fit the point count of the fiber of type t and read off the number of top components."""
    _guard(x.d, max_dim)
    D = fiber_dimension(x, t)
    if D.denominator != 1:  # pragma: no cover
        raise ArithmeticError(f"non-integral fiber dimension {D}")
    D = int(D)
    if D < 0:
        # the fiber is empty; confirm at the two cheapest nodes
        nodes = default_nodes(2, max_q)
        vals = [count_fixed_flags(x, t, q, max_dim) for q in nodes]
        residual = Fraction(sum(abs(v) for v in vals))
        if residual:
            raise ArithmeticError(f"fiber of negative expected dimension has points: {vals}")
        return ComponentCount(x.jordan_type, t.dims, D, 0, [], nodes[:1], vals[:1], nodes[1], residual)
    nodes = default_nodes(D + 2, max_q)
    vals = [count_fixed_flags(x, t, q, max_dim) for q in nodes]
    coeffs = interpolate(nodes[:-1], vals[:-1])
    residual = Fraction(poly_eval(coeffs, nodes[-1]) - vals[-1])
    if residual:
        raise ArithmeticError(f"point counts are not a polynomial of degree {D}: residual {residual}")
    lead = coeffs[D]
    if lead.denominator != 1:  # pragma: no cover
        raise ArithmeticError(f"non-integral leading coefficient {lead}")
    return ComponentCount(x.jordan_type, t.dims, D, int(lead), coeffs, nodes[:-1], vals[:-1], nodes[-1], residual)


def component_count(x: JordanData, t, n: int | None = None, max_dim: int | None = DEFAULT_MAX_DIM,
                    max_q: int | None = None):
    """Top-dimensional component count for one flag type, or summed over all types (t = "ALL").

    Returns (count, details) where details is a list of :class:`ComponentCount`.
    """
    if isinstance(t, str):
        if t.upper() != "ALL":
            raise ValueError(f"unknown flag type {t!r}")
        if n is None:
            raise ValueError("the number of steps is required for ALL")
        _check_steps(x, n)
        details = [component_count_type(x, FlagType(n, c), max_dim, max_q) for c in compositions(x.d, n)]
        return sum(r.count for r in details), details
    if not isinstance(t, FlagType):
        t = FlagType(len(t), tuple(t))
    r = component_count_type(x, t, max_dim, max_q)
    return r.count, [r]


def multiplicity_check(x: JordanData, n: int, max_dim: int | None = DEFAULT_MAX_DIM) -> dict:
    """Compare component counts with gl_n weight multiplicities of the dominant weight."""
    hw = dominant_weight(x, n)
    total, details = component_count(x, "ALL", n, max_dim)
    per_type = []
    ok = total == irrep_dimension(hw, n)
    for r in details:
        k = weight_multiplicity(hw, r.flag_type, n)
        per_type.append({"flag_type": list(r.flag_type), "components": r.count, "multiplicity": k})
        ok = ok and k == r.count and r.residual == 0
    return {
        "jordan_type": list(x.jordan_type),
        "steps": n,
        "dominant_weight": list(hw),
        "components": total,
        "irrep_dimension": irrep_dimension(hw, n),
        "per_type": per_type,
        "pass": ok,
    }


# ---------------------------------------------------------------- Drinfeld polynomials

def _scalar_poly(value, variables):
    if isinstance(value, LaurentPoly):
        return value.with_variables(variables)
    return LaurentPoly.constant(variables, value)


def parse_scalar(text: str, variables=None) -> LaurentPoly:
    """Parse '3a', 'q^2*a', '1/2' ... into a Laurent polynomial in its symbols."""
    if variables is None:
        variables = tuple(sorted(set(re.findall(r"[A-Za-z_]\w*", text))))
    return LaurentPoly.parse(text, variables)


def _check_relation(inp: DrinfeldInput, variables):
    """s x s^-1 = q x  <=>  s_(k-1) = q s_k along every Jordan chain."""
    s = [_scalar_poly(v, variables) for v in inp.s]
    q = _scalar_poly(inp.q, variables)
    if q.is_zero():
        raise ValueError("q must be nonzero")
    for i, v in enumerate(s):
        if v.is_zero():
            raise ValueError(f"s is not invertible: entry {i + 1} is zero")
    for blk in inp.x.blocks():
        for a, b in zip(blk, blk[1:]):
            if s[a] != q * s[b]:
                raise ValueError(f"s x s^-1 != q x: entry {a + 1} is {s[a].to_str()}, "
                                 f"expected q * ({s[b].to_str()})")
    return s


def _det(M, zero):
    n = len(M)
    if n == 0:
        return zero + 1
    if n == 1:
        return M[0][0]
    total = zero
    for j in range(n):
        if M[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * _det(minor, zero)
        total = total + term if j % 2 == 0 else total - term
    return total


def quotient_action(inp: DrinfeldInput, i: int, n: int, variables):
    """Matrix of s on F_max_i / F_min_i computed from spanning sets (no coordinate shortcuts)."""
    x = inp.x
    d = x.d
    s = _check_relation(inp, variables)
    xm = x.matrix()
    xi = [[Fraction(int(r == c)) for c in range(d)] for r in range(d)]
    for _ in range(i):
        xi = [[sum(Fraction(a) * b for a, b in zip(row, col)) for col in zip(*xm)] for row in xi]
    kernel = nullspace(xi, d)
    xp = [[Fraction(int(r == c)) for c in range(d)] for r in range(d)]
    for _ in range(n - i):
        xp = [[sum(Fraction(a) * b for a, b in zip(row, col)) for col in zip(*xm)] for row in xp]
    image = [list(c) for c in zip(*xp)]
    low, low_piv = rref(image) if any(any(v) for v in image) else ([], [])
    # extend a basis of F_min by vectors of F_max
    basis = [list(r) for r in low]
    comp = []
    cur, cur_piv = rref(basis) if basis else ([], [])
    for v in kernel:
        if not in_span(v, cur, cur_piv):
            comp.append(v)
            cur, cur_piv = rref(basis + comp)
    full = basis + comp
    m, k = len(comp), len(basis)
    if m == 0:
        return []
    # coordinates w.r.t. ``full`` via a rational left inverse
    cols = [list(c) for c in zip(*full)]  # d x (k+m)
    aug = [row + [Fraction(int(r == c)) for c in range(d)] for r, row in enumerate(cols)]
    R, piv = rref(aug)
    left_inv = [R[r][k + m:] for r in range(k + m)]
    assert piv[:k + m] == list(range(k + m))
    zero = LaurentPoly.zero(variables)
    M = [[zero] * m for _ in range(m)]
    for c, v in enumerate(comp):
        sv = [s[j] * v[j] for j in range(d)]
        for r in range(m):
            row = left_inv[k + r]
            acc = zero
            for coef, entry in zip(row, sv):
                if coef:
                    acc = acc + entry * coef
            M[r][c] = acc
    return M


def drinfeld_polynomials(inp: DrinfeldInput, n: int, var: str = "u"):
    """P_i(u) = det(u - s ; F_max_i / F_min_i), i = 1..n, as Laurent polynomials with u first."""
    _check_steps(inp.x, n)
    symbols = set()
    for v in list(inp.s) + [inp.q]:
        if isinstance(v, LaurentPoly):
            symbols |= {name for k, name in enumerate(v.variables) if any(e[k] for e in v.terms)}
    if var in symbols:
        raise ValueError(f"variable name {var!r} clashes with a scalar symbol")
    variables = (var,) + tuple(sorted(symbols))
    u = LaurentPoly.var(variables, var)
    out = []
    for i in range(1, n + 1):
        M = quotient_action(inp, i, n, variables)
        m = len(M)
        A = [[(u if r == c else 0) - M[r][c] for c in range(m)] for r in range(m)]
        out.append(_det(A, LaurentPoly.zero(variables)))
    return out


def univariate_degree(p: LaurentPoly, var: str = "u") -> int:
    idx = p.variables.index(var)
    return max(e[idx] for e in p.terms)


def leading_coefficient(p: LaurentPoly, var: str = "u") -> LaurentPoly:
    idx = p.variables.index(var)
    deg = univariate_degree(p, var)
    return LaurentPoly(p.variables, {e[:idx] + (0,) + e[idx + 1:]: c for e, c in p.terms.items() if e[idx] == deg})


def constant_coefficient(p: LaurentPoly, var: str = "u") -> LaurentPoly:
    idx = p.variables.index(var)
    return LaurentPoly(p.variables, {e: c for e, c in p.terms.items() if e[idx] == 0})


def single_block_input(k: int, q=None, a=None) -> DrinfeldInput:
    """x = J_k with s = diag(q^(k-1) a, ..., q a, a); q and a symbolic unless given."""
    names = tuple(n for n, v in (("a", a), ("q", q)) if v is None)
    qv = LaurentPoly.var(names, "q") if q is None else q
    av = LaurentPoly.var(names, "a") if a is None else a
    s = [av * qv ** (k - 1 - j) for j in range(k)]
    return DrinfeldInput(s, qv, JordanData((k,)))

