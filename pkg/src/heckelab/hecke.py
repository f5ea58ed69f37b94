"""Normal-form arithmetic in finite, affine, degenerate affine and nil Hecke algebras.

Every element is stored as ``sum_w g_w * p_w`` with the polynomial
coefficient to the right of the group-like letter ``g_w``.  The four
algebras differ only in two rules:

* how a simple generator multiplies a basis letter (``g_i * g_u``), and
* how a polynomial crosses a simple generator from left to right,
  ``p * g_i = g_i * s_i(p) + correction_i(p)``.

Everything else (straightening, caching, parsing, printing) is shared.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import cached_property, lru_cache

from .laurent import LaurentPoly, Scalar, as_scalar, exact_div, parse_expression
from .roots import CartanData, WeylElement, cartan_type, identity, simple_reflection, weyl_from_word, weyl_group


class HeckeAlgebra:
    kind = "abstract"
    prefix = "T"

    def __init__(self, cartan: CartanData | str, params: dict | None = None):
        if isinstance(cartan, str):
            cartan = cartan_type(cartan)
        self.cartan = cartan
        self.rank = cartan.rank
        self.params = {k: as_scalar(v) for k, v in (params or {}).items()}
        bad = set(self.params) - set(self.scalar_variables)
        if bad:
            raise ValueError(f"cannot specialize non-scalar variables {sorted(bad)}")
        self.e = identity(cartan)
        self.gens = [simple_reflection(cartan, i) for i in range(1, self.rank + 1)]
        self._mono_cache: dict = {}
        self._basis_cache: dict = {}
        self._refl_cache: dict = {}
        self._corr_cache: dict = {}

    # -- ring description (overridden) --------------------------------

    variables: tuple[str, ...] = ()
    scalar_variables: tuple[str, ...] = ()

    def reflect_monomial(self, i: int, exps: tuple) -> LaurentPoly:
        return LaurentPoly.monomial(self.variables, exps)

    def correction_monomial(self, i: int, exps: tuple) -> LaurentPoly:
        return LaurentPoly.zero(self.variables)

    def gen_times_basis(self, i: int, u: WeylElement) -> dict:
        raise NotImplementedError

    # -- helpers ------------------------------------------------------

    def __repr__(self):
        extra = f", {self.params}" if self.params else ""
        return f"{type(self).__name__}({self.cartan.name}{extra})"

    def __eq__(self, other):
        return type(self) is type(other) and self.cartan == other.cartan and self.params == other.params

    def __hash__(self):
        return hash((type(self), self.cartan, tuple(sorted(self.params.items()))))

    @cached_property
    def W(self) -> tuple[WeylElement, ...]:
        return weyl_group(self.cartan)

    def scalar(self, name: str) -> LaurentPoly:
        if name in self.params:
            return LaurentPoly.constant(self.variables, self.params[name])
        return LaurentPoly.var(self.variables, name)

    def const(self, c) -> LaurentPoly:
        return LaurentPoly.constant(self.variables, c)

    def specialized(self, assignments: dict) -> "HeckeAlgebra":
        params = dict(self.params)
        params.update(assignments)
        return type(self)(self.cartan, params)

    @cached_property
    def _central_idx(self) -> tuple[int, ...]:
        return tuple(self.variables.index(v) for v in self.scalar_variables)

    def reflect_poly(self, i: int, p: LaurentPoly) -> LaurentPoly:
        return p.map_monomials(lambda e: self._cached(self._refl_cache, self.reflect_monomial, i, e))

    def correction(self, i: int, p: LaurentPoly) -> LaurentPoly:
        return p.map_monomials(lambda e: self._cached(self._corr_cache, self.correction_monomial, i, e))

    def _cached(self, cache, fn, i, e):
        key = (i, e)
        val = cache.get(key)
        if val is None:
            val = cache[key] = fn(i, e)
        return val

    # -- elements -----------------------------------------------------

    def element(self, terms: dict) -> "HeckeElement":
        return HeckeElement(self, terms)

    def zero(self) -> "HeckeElement":
        return HeckeElement(self, {})

    def one(self) -> "HeckeElement":
        return HeckeElement(self, {self.e: self.const(1)})

    def basis(self, w: WeylElement | list | tuple) -> "HeckeElement":
        if not isinstance(w, WeylElement):
            w = weyl_from_word(w, self.cartan)
        return HeckeElement(self, {w: self.const(1)})

    def gen(self, i: int) -> "HeckeElement":
        return self.basis(self.gens[i - 1])

    def poly(self, p) -> "HeckeElement":
        if not isinstance(p, LaurentPoly):
            p = self.const(p)
        return HeckeElement(self, {self.e: p.with_variables(self.variables)})

    def word(self, word) -> "HeckeElement":
        """Product of simple generators in the given order."""
        out = self.one()
        for i in word:
            out = out * self.gen(int(i))
        return out

    # -- multiplication -----------------------------------------------

    def basis_product(self, w: WeylElement, u: WeylElement) -> dict:
        key = (w, u)
        val = self._basis_cache.get(key)
        if val is not None:
            return val
        cur = {u: self.const(1)}
        for i in reversed(w.reduced_word):
            nxt: dict = {}
            for t, c in cur.items():
                for t2, c2 in self.gen_times_basis(i, t).items():
                    _acc(nxt, t2, c * c2)
            cur = nxt
        self._basis_cache[key] = cur
        return cur

    def poly_times_basis(self, p: LaurentPoly, v: WeylElement) -> dict:
        """Normal form of ``p * g_v``."""
        out: dict = {}
        cidx = self._central_idx
        for e, c in p.terms.items():
            en = tuple(0 if k in cidx else x for k, x in enumerate(e))
            factor = LaurentPoly.monomial(self.variables, tuple(x - y for x, y in zip(e, en)), c)
            for u, x in self._mono_times_basis(en, v).items():
                _acc(out, u, factor * x)
        return out

    def _mono_times_basis(self, exps: tuple, v: WeylElement) -> dict:
        key = (exps, v)
        val = self._mono_cache.get(key)
        if val is not None:
            return val
        p = LaurentPoly.monomial(self.variables, exps)
        if v == self.e:
            val = {self.e: p}
        else:
            i = v.reduced_word[0]
            rest = self.gens[i - 1] * v
            val = {}
            for u, x in self.poly_times_basis(self.reflect_poly(i, p), rest).items():
                for t, c in self.basis_product(self.gens[i - 1], u).items():
                    _acc(val, t, c * x)
            for u, x in self.poly_times_basis(self.correction(i, p), rest).items():
                _acc(val, u, x)
        self._mono_cache[key] = val
        return val

    def mul(self, a: "HeckeElement", b: "HeckeElement") -> "HeckeElement":
        if a.algebra != self or b.algebra != self:
            raise ValueError("elements belong to different algebras")
        out: dict = {}
        for w, p in a.terms.items():
            for v, r in b.terms.items():
                for u, x in self.poly_times_basis(p, v).items():
                    xr = x * r
                    if not xr:
                        continue
                    for t, c in self.basis_product(w, u).items():
                        _acc(out, t, c * xr)
        return HeckeElement(self, out)

    # -- text form ----------------------------------------------------

    def monomial_str(self, e: tuple) -> str:
        return LaurentPoly.zero(self.variables)._monomial_str(e)

    def letter(self, w: WeylElement) -> str:
        return f"{self.prefix}[{','.join(str(i) for i in w.reduced_word)}]"

    def format(self, a: "HeckeElement") -> str:
        if not a.terms:
            return "0"
        items = sorted(a.terms.items(), key=lambda t: (t[0].length, t[0].reduced_word), reverse=True)
        pieces = []
        for w, p in items:
            pieces.append(self._format_term(self.letter(w), p))
        out = pieces[0][1] if not pieces[0][0] else "-" + pieces[0][1]
        for neg, body in pieces[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def _format_term(self, letter: str, p: LaurentPoly) -> tuple[bool, str]:
        if len(p.terms) == 1:
            (e, c), = p.terms.items()
            m = self.monomial_str(e)
            neg = c < 0
            a = -c if neg else c
            parts = [str(a)] if (a != 1 or not m) else []
            if m:
                parts.append(m)
            coef = "*".join(parts)
            if coef == "1":
                return neg, letter
            return neg, f"{letter}*{coef}"
        return False, f"{letter}*({p.to_str(monomial=self.monomial_str)})"

    def parse(self, text: str) -> "HeckeElement":
        def atom(name, index):
            if name == self.prefix and index is not None:
                return self.word(index)
            return self._parse_atom(name, index)

        return parse_expression(
            text, atom, lambda c: self.poly(self.const(c)), indexed=(self.prefix, "Y")
        )

    def _parse_atom(self, name, index):
        if index is None and name in self.variables:
            return self.poly(LaurentPoly.var(self.variables, name))
        raise ValueError(f"unknown symbol {name!r} for {self!r}")


def _acc(d: dict, key, val: LaurentPoly):
    if not val:
        return
    cur = d.get(key)
    s = val if cur is None else cur + val
    if s:
        d[key] = s
    else:
        d.pop(key, None)


class HeckeElement:
    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: HeckeAlgebra, terms: dict):
        self.algebra = algebra
        self.terms = {w: p for w, p in terms.items() if p}

    def _lift(self, other):
        if isinstance(other, HeckeElement):
            return other
        if isinstance(other, LaurentPoly):
            return self.algebra.poly(other)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.algebra.poly(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for w, p in other.terms.items():
            _acc(out, w, p)
        return HeckeElement(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return HeckeElement(self.algebra, {w: -p for w, p in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return HeckeElement(self.algebra, {w: p * other for w, p in self.terms.items()})
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self.algebra.mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self * other
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self.algebra.mul(other, self)

    def __truediv__(self, other):
        if isinstance(other, HeckeElement):
            c = other.scalar_value()
            if c is None:
                raise ValueError("can only divide by scalars")
            other = c
        other = as_scalar(other)
        return HeckeElement(self.algebra, {w: p / other for w, p in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            if set(self.terms) != {self.algebra.e}:
                raise ValueError("negative powers only for scalar monomials")
            return self.algebra.poly(self.terms[self.algebra.e] ** k)
        out = self.algebra.one()
        for _ in range(k):
            out = out * self
        return out

    def scalar_value(self) -> Scalar | None:
        if not self.terms:
            return 0
        if set(self.terms) == {self.algebra.e} and self.terms[self.algebra.e].is_constant():
            return self.terms[self.algebra.e].constant_term()
        return None

    def __eq__(self, other):
        if isinstance(other, HeckeElement):
            return self.algebra == other.algebra and self.terms == other.terms
        lifted = self._lift(other)
        if lifted is NotImplemented:
            return NotImplemented
        return self == lifted

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def coefficient(self, w) -> LaurentPoly:
        if not isinstance(w, WeylElement):
            w = weyl_from_word(w, self.algebra.cartan)
        return self.terms.get(w, LaurentPoly.zero(self.algebra.variables))

    def degree(self) -> int:
        """Top degree of the coefficients in the algebra's graded variables."""
        return max(p.degree() for p in self.terms.values())

    def __str__(self):
        return self.algebra.format(self)

    def __repr__(self):
        return f"<{self.algebra!r}: {self}>"


# -- the four algebras ----------------------------------------------------


class FiniteHecke(HeckeAlgebra):
    """H_W over Z[q, q^-1], basis T_w."""

    kind = "finite"
    prefix = "T"

    @property
    def variables(self):
        return ("q",)

    scalar_variables = ("q",)

    def gen_times_basis(self, i, u):
        s = self.gens[i - 1]
        su = s * u
        if su.length > u.length:
            return {su: self.const(1)}
        q = self.scalar("q")
        return {u: q - 1, su: q}

    def format(self, a):
        if not a.terms:
            return "0"
        items = sorted(a.terms.items(), key=lambda t: (t[0].length, t[0].reduced_word), reverse=True)
        pieces = []
        for w, p in items:
            letter = self.letter(w)
            if len(p.terms) > 1:
                pieces.append((False, f"({p.to_str(compact=True)})*{letter}"))
                continue
            (e, c), = p.terms.items()
            neg = c < 0
            mag = p * (-1 if neg else 1)
            m = mag.to_str(compact=True)
            pieces.append((neg, letter if m == "1" else f"{m}*{letter}"))
        out = ("-" if pieces[0][0] else "") + pieces[0][1]
        for neg, body in pieces[1:]:
            out += (" - " if neg else " + ") + body
        return out


class AffineHecke(HeckeAlgebra):
    """Bernstein presentation: basis T_w * Y^lambda, coefficients in Z[q^{+-1}][Y^{+-1}]."""

    kind = "affine"
    prefix = "T"
    scalar_variables = ("q",)

    @cached_property
    def variables(self):
        return ("q",) + tuple(f"Y{i}" for i in range(1, self.rank + 1))

    def y(self, weight) -> LaurentPoly:
        return LaurentPoly.monomial(self.variables, (0,) + tuple(int(x) for x in weight))

    def gen_times_basis(self, i, u):
        return FiniteHecke.gen_times_basis(self, i, u)

    def reflect_monomial(self, i, e):
        lam = e[1:]
        k = lam[i - 1]
        root = self.cartan.simple_root(i)
        return LaurentPoly.monomial(self.variables, (e[0],) + tuple(x - k * r for x, r in zip(lam, root)))

    def correction_monomial(self, i, e):
        # -(1-q) (Y^lam - Y^{s lam}) / (1 - Y^{-alpha}), summed as a geometric series
        lam = e[1:]
        k = lam[i - 1]
        root = self.cartan.simple_root(i)
        if k == 0:
            return LaurentPoly.zero(self.variables)
        if k > 0:
            shifts, sign = range(0, -k, -1), 1
        else:
            shifts, sign = range(1, -k + 1), -1
        quot = {(e[0],) + tuple(x + j * r for x, r in zip(lam, root)): sign for j in shifts}
        return LaurentPoly(self.variables, quot) * (self.scalar("q") - 1)

    def monomial_str(self, e):
        parts = []
        if e[0] == 1:
            parts.append("q")
        elif e[0]:
            parts.append(f"q^{e[0]}")
        if any(e[1:]):
            parts.append("Y(" + ",".join(str(x) for x in e[1:]) + ")")
        return "*".join(parts)

    def _parse_atom(self, name, index):
        if name == "Y" and index is not None:
            if len(index) != self.rank:
                raise ValueError(f"Y exponent needs {self.rank} entries")
            return self.poly(self.y(index))
        return super()._parse_atom(name, index)


class _HAlgebra(HeckeAlgebra):
    """Shared polynomial ring C[h] (plus eps for the degenerate algebra)."""

    def x_variables(self):
        return tuple(f"x{i}" for i in range(1, self.rank + 1))

    def linear_form(self, weight) -> LaurentPoly:
        """The weight sum_j c_j omega_j as the linear polynomial sum_j c_j x_j."""
        n = len(self.variables)
        terms = {}
        for j, c in enumerate(weight):
            if c:
                e = [0] * n
                e[j] = 1
                terms[tuple(e)] = int(c)
        return LaurentPoly(self.variables, terms)

    def root_form(self, i: int) -> LaurentPoly:
        return self.linear_form(self.cartan.simple_root(i))

    def reflect_monomial(self, i, e):
        n = len(self.variables)
        out = LaurentPoly.monomial(self.variables, tuple(0 if k == i - 1 else x for k, x in enumerate(e)))
        if e[i - 1]:
            xi = LaurentPoly.var(self.variables, self.variables[i - 1])
            out = out * (xi - self.root_form(i)) ** e[i - 1]
        return out

    def divided_difference(self, i, p: LaurentPoly) -> LaurentPoly:
        """(s_i(p) - p) / alpha_i."""
        return exact_div(self.reflect_poly(i, p) - p, self.root_form(i))


class DegenerateHecke(_HAlgebra):
    """C[W] (x) C[h, eps] with s_i * lam - s_i(lam) * s_i = -eps <alpha_i^vee, lam>."""

    kind = "degenerate"
    prefix = "w"
    scalar_variables = ("eps",)

    @cached_property
    def variables(self):
        return self.x_variables() + ("eps",)

    def gen_times_basis(self, i, u):
        return {self.gens[i - 1] * u: self.const(1)}

    def correction_monomial(self, i, e):
        # p * s_i = s_i * s_i(p) + eps * (s_i(p) - p) / alpha_i
        p = LaurentPoly.monomial(self.variables, e)
        return self.divided_difference(i, p) * self.scalar("eps")


class NilHecke(_HAlgebra):
    """Nil (x) C[h] with r_s * lam - s(lam) * r_s = -<lam, alpha^vee>."""

    kind = "nil"
    prefix = "r"

    @cached_property
    def variables(self):
        return self.x_variables()

    def gen_times_basis(self, i, u):
        su = self.gens[i - 1] * u
        if su.length > u.length:
            return {su: self.const(1)}
        return {}

    def correction_monomial(self, i, e):
        # p * r_i = r_i * s_i(p) + (s_i(p) - p) / alpha_i
        return self.divided_difference(i, LaurentPoly.monomial(self.variables, e))


ALGEBRAS = {"finite": FiniteHecke, "affine": AffineHecke, "degenerate": DegenerateHecke, "nil": NilHecke}


@lru_cache(maxsize=None)
def algebra(kind: str, cartan: CartanData | str) -> HeckeAlgebra:
    if isinstance(cartan, str):
        cartan = cartan_type(cartan)
    try:
        return ALGEBRAS[kind](cartan)
    except KeyError:
        raise ValueError(f"unknown algebra kind {kind!r}") from None


def finite_hecke_mul(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    return a * b


affine_hecke_mul = degenerate_mul = nil_hecke_mul = finite_hecke_mul


def specialize(a: HeckeElement, assignments: dict) -> HeckeElement:
    """Substitute central scalars (``q`` or ``eps``) coefficient-wise."""
    alg = a.algebra
    bad = set(assignments) - set(alg.scalar_variables)
    if bad:
        raise ValueError(f"cannot specialize non-scalar variables {sorted(bad)} in {alg!r}")
    target = alg.specialized(assignments)
    vals = {k: as_scalar(v) for k, v in assignments.items()}
    return HeckeElement(target, {w: p.substitute(vals) for w, p in a.terms.items()})


def random_element(alg: HeckeAlgebra, rng: random.Random, n_terms: int = 2, n_monomials: int = 2,
                   max_exp: int = 1) -> HeckeElement:
    """Small random element used by associativity batteries."""
    terms: dict = {}
    laurent = isinstance(alg, (AffineHecke, FiniteHecke))
    for _ in range(n_terms):
        w = rng.choice(alg.W)
        p = LaurentPoly.zero(alg.variables)
        for _ in range(n_monomials):
            e = []
            for name in alg.variables:
                if name in alg.params:
                    e.append(0)
                elif laurent:
                    e.append(rng.randint(-max_exp, max_exp))
                else:
                    e.append(rng.randint(0, max_exp))
            p = p + LaurentPoly.monomial(alg.variables, tuple(e), rng.choice([-2, -1, 1, 1, 2, Fraction(1, 2)]))
        _acc(terms, w, p)
    return HeckeElement(alg, terms)
