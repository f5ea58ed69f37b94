"""Finite fields F_q for prime powers q <= 2**16.

Elements are plain ints in ``range(q)``.  For q = p**k an element encodes the
polynomial sum c_j t^j through its base-p digits c_j, reduced modulo a fixed
monic irreducible of degree k.  Multiplication in extension fields goes
through discrete log tables built once per field.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

MAX_ORDER = 2**16

# monic irreducible polynomials, low degree coefficient first, leading 1 omitted
IRREDUCIBLE = {
    4: (1, 1),          # t^2 + t + 1
    8: (1, 1, 0),       # t^3 + t + 1
    9: (1, 0),          # t^2 + 1
    16: (1, 1, 0, 0),   # t^4 + t + 1
    25: (2, 0),         # t^2 + 2
    27: (1, 2, 0),      # t^3 + 2t + 1
    32: (1, 0, 1, 0, 0),  # t^5 + t^2 + 1
    49: (1, 0),         # t^2 + 1
}


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return (p, k) with q = p**k, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(f for f in range(2, q + 1) if q % f == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, k


def is_prime_power(q: int) -> bool:
    try:
        factor_prime_power(q)
    except ValueError:
        return False
    return True


def prime_powers(start: int = 2):
    """Yield prime powers >= start in increasing order."""
    q = start
    while True:
        if is_prime_power(q):
            yield q
        q += 1


def _poly_mulmod(a, b, mod, p):
    k = len(mod)
    out = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    # t^k = -sum mod_j t^j
    for deg in range(len(out) - 1, k - 1, -1):
        c = out[deg]
        if c:
            out[deg] = 0
            for j, m in enumerate(mod):
                out[deg - k + j] = (out[deg - k + j] - c * m) % p
    return out[:k]


def _is_irreducible(mod, p) -> bool:
    """Brute-force irreducibility: no monic factor of degree <= k/2."""
    k = len(mod)
    full = list(mod) + [1]
    for deg in range(1, k // 2 + 1):
        for low in product(range(p), repeat=deg):
            f = list(low) + [1]
            if _poly_rem(full, f, p) == [0] * deg:
                return False
    return True


def _poly_rem(a, f, p):
    a = list(a)
    df = len(f) - 1
    for deg in range(len(a) - 1, df - 1, -1):
        c = a[deg]
        if c:
            for j in range(df + 1):
                a[deg - df + j] = (a[deg - df + j] - c * f[j]) % p
    return a[:df]


def find_irreducible(p: int, k: int):
    for low in product(range(p), repeat=k):
        if low[0] and _is_irreducible(low, p):
            return low
    raise ValueError(f"no irreducible of degree {k} over F_{p}")  # pragma: no cover


class GF:
    """The field with q elements."""

    def __init__(self, q: int):
        if q > MAX_ORDER:
            raise ValueError(f"field order {q} exceeds {MAX_ORDER}")
        self.q = q
        self.p, self.k = factor_prime_power(q)
        self.zero, self.one = 0, 1
        if self.k == 1:
            self.modulus = None
            return
        self.modulus = IRREDUCIBLE.get(q) or find_irreducible(self.p, self.k)
        self._build_tables()

    def _digits(self, a):
        p = self.p
        out = []
        for _ in range(self.k):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def _from_digits(self, ds):
        a = 0
        for c in reversed(ds):
            a = a * self.p + c
        return a

    def _build_tables(self):
        q, p = self.q, self.p
        # search for a primitive element
        for g in range(2, q) if q > 2 else ():
            exp = [1]
            gd = self._digits(g)
            cur = [1] + [0] * (self.k - 1)
            for _ in range(q - 2):
                cur = _poly_mulmod(cur, gd, self.modulus, p)
                v = self._from_digits(cur)
                if v == 1:
                    break
                exp.append(v)
            if len(exp) == q - 1:
                break
        else:  # pragma: no cover
            raise ValueError("modulus is not irreducible")
        self._exp = exp + exp
        self._log = [0] * q
        for i, v in enumerate(exp):
            self._log[v] = i
        if p == 2:
            self._add = None
        elif q <= 256:
            self._add = [[self._from_digits([(x + y) % p for x, y in zip(self._digits(a), self._digits(b))])
                          for b in range(q)] for a in range(q)]
        else:
            self._add = None

    def __repr__(self):
        return f"GF({self.q})"

    def __eq__(self, other):
        return isinstance(other, GF) and other.q == self.q

    def __hash__(self):
        return hash(("GF", self.q))

    def elements(self):
        return range(self.q)

    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._add is not None:
            return self._add[a][b]
        return self._from_digits([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def neg(self, a):
        if self.k == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self._from_digits([(-x) % self.p for x in self._digits(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.k == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in " + repr(self))
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def from_int(self, n: int):
        """Image of the integer n under Z -> F_q."""
        return n % self.p

    def is_zero(self, a):
        return a == 0


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    return GF(q)
