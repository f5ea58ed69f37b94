"""Multivariate Laurent polynomials with exact rational coefficients.

A :class:`LaurentPoly` is a finite map from integer exponent vectors to
nonzero rationals over an ordered tuple of variable names.  Exponents may
be negative.  :class:`TruncatedSeries` wraps a polynomial together with a
set of graded variables and a truncation order; it is used for the
``q = exp(eps)`` style expansions.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import factorial
from typing import Callable, Iterable, Mapping, Sequence

Scalar = int | Fraction


class NotDivisibleError(ArithmeticError):
    """Raised when an exact division leaves a remainder."""


class VariableMismatchError(ValueError):
    pass


def as_scalar(c) -> Scalar:
    if isinstance(c, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, str):
        return as_scalar(Fraction(c))
    raise TypeError(f"not an exact scalar: {c!r}")


def _norm(c):
    # internal fast path: c is already an int or Fraction
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


class LaurentPoly:
    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple, Scalar] | None = None):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n:
                    raise ValueError(f"exponent {e} has wrong length for {self.variables}")
                c = as_scalar(c)
                if c:
                    clean[e] = c
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------

    @classmethod
    def _raw(cls, variables: tuple, terms: dict) -> "LaurentPoly":
        p = object.__new__(cls)
        p.variables = variables
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, variables):
        return cls._raw(tuple(variables), {})

    @classmethod
    def constant(cls, variables, c):
        variables = tuple(variables)
        c = as_scalar(c)
        return cls._raw(variables, {(0,) * len(variables): c} if c else {})

    @classmethod
    def one(cls, variables):
        return cls.constant(variables, 1)

    @classmethod
    def monomial(cls, variables, exps, c=1):
        variables = tuple(variables)
        c = as_scalar(c)
        return cls._raw(variables, {tuple(exps): c} if c else {})

    @classmethod
    def var(cls, variables, name: str, power: int = 1):
        variables = tuple(variables)
        e = [0] * len(variables)
        e[variables.index(name)] = power
        return cls._raw(variables, {tuple(e): 1})

    @classmethod
    def parse(cls, text: str, variables: Sequence[str]) -> "LaurentPoly":
        variables = tuple(variables)

        def atom(name, index):
            if index is not None or name not in variables:
                raise ValueError(f"unknown symbol {name!r}")
            return cls.var(variables, name)

        return parse_expression(text, atom, lambda c: cls.constant(variables, c))

    # -- coercion -----------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.variables != self.variables:
                raise VariableMismatchError(f"{self.variables} vs {other.variables}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return LaurentPoly.constant(self.variables, other)
        return NotImplemented

    def with_variables(self, variables: Sequence[str]) -> "LaurentPoly":
        """Re-express over another variable list (missing variables must not occur)."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        pos = {v: i for i, v in enumerate(variables)}
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(variables)
            for v, k in zip(self.variables, e):
                if k:
                    if v not in pos:
                        raise VariableMismatchError(f"variable {v} not in {variables}")
                    ne[pos[v]] = k
            out[tuple(ne)] = c
        return LaurentPoly._raw(variables, out)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = _norm(s)
            else:
                out.pop(e, None)
        return LaurentPoly._raw(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = as_scalar(other)
            if not other:
                return LaurentPoly.zero(self.variables)
            return LaurentPoly._raw(self.variables, {e: _norm(c * other) for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (eb, cb), = b.items()
            if not any(eb):
                if cb == 1:
                    return LaurentPoly._raw(self.variables, dict(a))
                return LaurentPoly._raw(self.variables, {e: _norm(c * cb) for e, c in a.items()})
            return LaurentPoly._raw(
                self.variables, {tuple(x + y for x, y in zip(e, eb)): _norm(c * cb) for e, c in a.items()}
            )
        out: dict = {}
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return LaurentPoly._raw(self.variables, {e: _norm(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, LaurentPoly):
            return exact_div(self, other)
        other = as_scalar(other)
        if not other:
            raise ZeroDivisionError("division by zero")
        return LaurentPoly._raw(self.variables, {e: as_scalar(Fraction(c) / other) for e, c in self.terms.items()})

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("integer powers only")
        if k < 0:
            if len(self.terms) != 1:
                raise NotDivisibleError("only monomials have negative powers")
            (e, c), = self.terms.items()
            return LaurentPoly._raw(self.variables, {tuple(x * k for x in e): as_scalar(Fraction(c) ** k)})
        result = LaurentPoly.one(self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.terms == LaurentPoly.constant(self.variables, other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"LaurentPoly({self.to_str()!r}, {self.variables})"

    def __str__(self):
        return self.to_str()

    # -- queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_term(self) -> Scalar:
        return self.terms.get((0,) * len(self.variables), 0)

    def coefficient(self, exps) -> Scalar:
        return self.terms.get(tuple(exps), 0)

    def degree_bounds(self, index: int) -> tuple[int, int]:
        ks = [e[index] for e in self.terms]
        return min(ks), max(ks)

    def degree(self, indices: Iterable[int] | None = None) -> int:
        """Maximal total degree over ``indices`` (all variables by default)."""
        idx = range(len(self.variables)) if indices is None else list(indices)
        return max(sum(e[i] for i in idx) for e in self.terms)

    def homogeneous_part(self, deg: int, indices: Iterable[int] | None = None) -> "LaurentPoly":
        idx = range(len(self.variables)) if indices is None else list(indices)
        return LaurentPoly._raw(
            self.variables, {e: c for e, c in self.terms.items() if sum(e[i] for i in idx) == deg}
        )

    def map_monomials(self, fn: Callable[[tuple], "LaurentPoly"]) -> "LaurentPoly":
        """Linear extension of ``fn`` from monomials (given by exponent vector)."""
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            img = fn(e)
            return img if c == 1 else img * c
        out: dict = {}
        for e, c in self.terms.items():
            for e2, c2 in fn(e).terms.items():
                out[e2] = out.get(e2, 0) + c * c2
        return LaurentPoly._raw(self.variables, {e: _norm(c) for e, c in out.items() if c})

    def substitute(self, values: Mapping[str, object], variables: Sequence[str] | None = None) -> "LaurentPoly":
        """Substitute scalars or polynomials (over ``variables``) for named variables."""
        target = self.variables if variables is None else tuple(variables)
        images = []
        for v in self.variables:
            if v in values:
                val = values[v]
                if not isinstance(val, LaurentPoly):
                    val = LaurentPoly.constant(target, val)
                images.append(val.with_variables(target))
            else:
                images.append(LaurentPoly.var(target, v) if v in target else None)
        result = LaurentPoly.zero(target)
        for e, c in self.terms.items():
            term = LaurentPoly.constant(target, c)
            for img, k in zip(images, e):
                if k:
                    if img is None:
                        raise VariableMismatchError("unsubstituted variable has no target")
                    term = term * img ** k
            result = result + term
        return result

    def evaluate(self, values: Mapping[str, Scalar]) -> Scalar:
        total: Scalar = 0
        for e, c in self.terms.items():
            t = Fraction(c)
            for v, k in zip(self.variables, e):
                if k:
                    t *= Fraction(values[v]) ** k
            total += t
        return as_scalar(Fraction(total))

    # -- printing -----------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (sum(abs(x) for x in t[0]), t[0]), reverse=True)

    def to_str(self, compact: bool = False, monomial: Callable[[tuple], str] | None = None) -> str:
        if not self.terms:
            return "0"
        fmt = monomial or self._monomial_str
        pieces = []
        for e, c in self.sorted_terms():
            m = fmt(e)
            neg = c < 0
            a = -c if neg else c
            if m == "":
                body = str(a)
            elif a == 1:
                body = m
            else:
                body = f"{a}*{m}"
            pieces.append((neg, body))
        sep_plus, sep_minus = ("+", "-") if compact else (" + ", " - ")
        neg, body = pieces[0]
        out = ("-" if neg else "") + body
        for neg, body in pieces[1:]:
            out += (sep_minus if neg else sep_plus) + body
        return out

    def _monomial_str(self, e: tuple) -> str:
        parts = []
        for v, k in zip(self.variables, e):
            if k == 1:
                parts.append(v)
            elif k:
                parts.append(f"{v}^{k}")
        return "*".join(parts)


# -- exact division -------------------------------------------------------


def poly_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    if a.variables != b.variables:
        raise VariableMismatchError(f"{a.variables} vs {b.variables}")
    return a * b


def exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Return ``c`` with ``a == b * c``; raise :class:`NotDivisibleError` otherwise.

    Lex-leading-term division.  Per variable the quotient's exponents are
    confined to ``[min(a) - min(b), max(a) - max(b)]``, so a candidate
    term outside that box proves a remainder exists.
    """
    if a.variables != b.variables:
        raise VariableMismatchError(f"{a.variables} vs {b.variables}")
    if not b.terms:
        raise ZeroDivisionError("division by zero polynomial")
    if not a.terms:
        return LaurentPoly.zero(a.variables)
    n = len(a.variables)
    if len(b.terms) == 1:
        (eb, cb), = b.terms.items()
        return LaurentPoly._raw(
            a.variables,
            {tuple(x - y for x, y in zip(e, eb)): as_scalar(Fraction(c) / cb) for e, c in a.terms.items()},
        )
    lo = [min(e[i] for e in a.terms) - min(e[i] for e in b.terms) for i in range(n)]
    hi = [max(e[i] for e in a.terms) - max(e[i] for e in b.terms) for i in range(n)]
    lt_b = max(b.terms)
    c_b = Fraction(b.terms[lt_b])
    rem = dict(a.terms)
    quot = {}
    while rem:
        lt = max(rem)
        t = tuple(x - y for x, y in zip(lt, lt_b))
        if any(t[i] < lo[i] or t[i] > hi[i] for i in range(n)):
            raise NotDivisibleError("polynomial is not divisible")
        coef = as_scalar(Fraction(rem[lt]) / c_b)
        quot[t] = coef
        for e, c in b.terms.items():
            k = tuple(x + y for x, y in zip(e, t))
            s = rem.get(k, 0) - coef * c
            if s:
                rem[k] = as_scalar(s)
            else:
                rem.pop(k, None)
    return LaurentPoly._raw(a.variables, quot)


# -- truncated power series -----------------------------------------------


class TruncatedSeries:
    """Polynomial truncated above total degree ``order`` in the graded variables."""

    __slots__ = ("poly", "graded", "order")

    def __init__(self, poly: LaurentPoly, graded: Sequence[str], order: int):
        if order < 0:
            raise ValueError("order must be nonnegative")
        self.graded = tuple(graded)
        self.order = order
        idx = [poly.variables.index(g) for g in self.graded]
        self.poly = LaurentPoly._raw(
            poly.variables, {e: c for e, c in poly.terms.items() if sum(e[i] for i in idx) <= order}
        )

    @property
    def variables(self):
        return self.poly.variables

    def _like(self, poly):
        return TruncatedSeries(poly, self.graded, self.order)

    def _other(self, other):
        if isinstance(other, TruncatedSeries):
            if other.graded != self.graded or other.variables != self.variables:
                raise VariableMismatchError("incompatible series")
            return other.poly, min(self.order, other.order)
        if isinstance(other, LaurentPoly):
            return other, self.order
        return LaurentPoly.constant(self.variables, other), self.order

    def __add__(self, other):
        p, order = self._other(other)
        return TruncatedSeries(self.poly + p, self.graded, order)

    __radd__ = __add__

    def __neg__(self):
        return self._like(-self.poly)

    def __sub__(self, other):
        p, order = self._other(other)
        return TruncatedSeries(self.poly - p, self.graded, order)

    def __rsub__(self, other):
        p, order = self._other(other)
        return TruncatedSeries(p - self.poly, self.graded, order)

    def __mul__(self, other):
        p, order = self._other(other)
        return TruncatedSeries(self.poly * p, self.graded, order)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.poly == other.poly and self.graded == other.graded and self.order == other.order
        return NotImplemented

    def __repr__(self):
        return f"TruncatedSeries({self.poly.to_str()!r}, order={self.order})"

    def is_zero(self):
        return self.poly.is_zero()


def series_exp(c, order: int, variables: Sequence[str] = ("eps",), var: str = "eps",
               graded: Sequence[str] | None = None) -> TruncatedSeries:
    """``exp(c * var)`` truncated at degree ``order``."""
    variables = tuple(variables)
    lin = LaurentPoly.var(variables, var) * as_scalar(Fraction(c))
    return exp_series(lin, order, graded if graded is not None else variables)


def exp_series(linear: LaurentPoly, order: int, graded: Sequence[str]) -> TruncatedSeries:
    """``exp(linear)`` for a polynomial without constant term, truncated at ``order``."""
    if linear.constant_term():
        raise ValueError("exponent must have zero constant term")
    total = TruncatedSeries(LaurentPoly.one(linear.variables), graded, order)
    power = LaurentPoly.one(linear.variables)
    x = TruncatedSeries(linear, graded, order)
    for k in range(1, order + 1):
        power = (x * power).poly
        total = total + power * Fraction(1, factorial(k))
    return total


def lowest_degree_part(s: TruncatedSeries) -> tuple[int, LaurentPoly]:
    if s.is_zero():
        raise ValueError("zero series has no lowest-degree part")
    idx = [s.variables.index(g) for g in s.graded]
    deg = min(sum(e[i] for i in idx) for e in s.poly.terms)
    return deg, s.poly.homogeneous_part(deg, idx)


# -- expression parser ----------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text: str):
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        num, ident, sym = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif ident is not None:
            out.append(("id", ident))
        elif sym is not None and sym.strip():
            if sym not in "+-*/^()[],":
                raise ValueError(f"unexpected character {sym!r}")
            out.append(("sym", sym))
        pos = m.end()
    return out


def parse_expression(text: str, atom: Callable, scalar: Callable, indexed: Iterable[str] = ()):
    """Parse ``text`` into ring elements.

    ``atom(name, index)`` builds identifiers (``index`` is the integer list
    after a name from ``indexed``, written ``T[1,2]`` or ``Y(1,0)``, else
    ``None``); ``scalar(Fraction)`` lifts numbers.  Supports ``+ - * / ^``,
    parentheses and implicit multiplication such as ``3a``.
    """
    toks = _tokenize(text)
    indexed = set(indexed)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take(kind=None, val=None):
        nonlocal pos
        t = peek()
        if t[0] is None or (kind and t[0] != kind) or (val is not None and t[1] != val):
            raise ValueError(f"parse error near token {pos} in {text!r}")
        pos += 1
        return t

    def int_list(close):
        vals = []
        if peek() == ("sym", close):
            take()
            return vals
        while True:
            sign = 1
            if peek() == ("sym", "-"):
                take()
                sign = -1
            vals.append(sign * take("num")[1])
            t = take("sym")
            if t[1] == close:
                return vals
            if t[1] != ",":
                raise ValueError(f"bad index list in {text!r}")

    def expr():
        sign = 1
        if peek()[0] == "sym" and peek()[1] in "+-":
            sign = -1 if take()[1] == "-" else 1
        val = term()
        if sign < 0:
            val = -val
        while peek()[0] == "sym" and peek()[1] in "+-":
            op = take()[1]
            rhs = term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def starts_atom():
        k, v = peek()
        return k in ("num", "id") or (k == "sym" and v == "(")

    def term():
        val = power()
        while True:
            k, v = peek()
            if k == "sym" and v == "*":
                take()
                val = val * power()
            elif k == "sym" and v == "/":
                take()
                den = power()
                val = val / den
            elif starts_atom():
                val = val * power()
            else:
                return val

    def power():
        base = atom_()
        if peek() == ("sym", "^"):
            take()
            sign = 1
            paren = False
            if peek() == ("sym", "("):
                take()
                paren = True
            if peek() == ("sym", "-"):
                take()
                sign = -1
            k = sign * take("num")[1]
            if paren:
                take("sym", ")")
            base = base ** k
        return base

    def atom_():
        k, v = peek()
        if k == "num":
            take()
            return scalar(Fraction(v))
        if k == "id":
            take()
            if v in indexed and peek()[0] == "sym" and peek()[1] in "[(":
                close = "]" if take()[1] == "[" else ")"
                return atom(v, int_list(close))
            return atom(v, None)
        if (k, v) == ("sym", "("):
            take()
            val = expr()
            take("sym", ")")
            return val
        raise ValueError(f"parse error near token {pos} in {text!r}")

    result = expr()
    if pos != len(toks):
        raise ValueError(f"trailing input in {text!r}")
    return result
