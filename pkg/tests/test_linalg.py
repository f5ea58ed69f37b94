import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from heckelab.finite_field import GF, IRREDUCIBLE, _is_irreducible, factor_prime_power, prime_powers
from heckelab.linalg import (
    QQ, SparseEchelon, interpolate, nullspace, poly_eval, rank, rref, mat_vec,
)


@pytest.mark.parametrize("q", sorted(IRREDUCIBLE))
def test_table_polynomials_irreducible(q):
    p, k = factor_prime_power(q)
    assert len(IRREDUCIBLE[q]) == k
    assert _is_irreducible(IRREDUCIBLE[q], p)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 81])
def test_field_axioms(q):
    F = GF(q)
    rng = random.Random(q)
    for _ in range(300):
        a, b, c = (rng.randrange(q) for _ in range(3))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.add(a, F.neg(a)) == 0
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        if a:
            assert F.mul(a, F.inv(a)) == 1
    # characteristic p
    one = 0
    for _ in range(F.p):
        one = F.add(one, 1)
    assert one == 0
    # multiplicative group is cyclic of order q-1: every nonzero element satisfies x^(q-1) = 1
    for a in range(1, q):
        x = 1
        for _ in range(q - 1):
            x = F.mul(x, a)
        assert x == 1


def test_non_prime_powers_rejected():
    for q in [0, 1, 6, 12, 100]:
        with pytest.raises(ValueError):
            GF(q)
    with pytest.raises(ValueError):
        GF(2**17)
    assert list(zip(range(10), prime_powers()))[-1][1] == 16


def test_rref_and_rank():
    R, piv = rref([[2, 4, 6], [1, 2, 4]])
    assert piv == [0, 2]
    assert R[0] == [1, 2, 0]
    assert rank([[1, 1, 0], [0, 1, 1], [1, 0, 1]]) == 3
    assert rank([[1, 1, 0], [0, 1, 1], [1, 0, 1]], GF(2)) == 2


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 5), st.data())
def test_nullspace_is_kernel(m, n, data):
    M = [[data.draw(st.integers(-3, 3)) for _ in range(n)] for _ in range(m)]
    ker = nullspace(M, n)
    assert len(ker) == n - rank(M)
    for v in ker:
        assert all(x == 0 for x in mat_vec([[Fraction(x) for x in r] for r in M], v))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.dictionaries(st.integers(0, 7), st.integers(-3, 3), max_size=4), max_size=8))
def test_sparse_rank_matches_dense(rows):
    dense = [[r.get(j, 0) for j in range(8)] for r in rows]
    ech = SparseEchelon()
    for r in rows:
        ech.add(r)
    assert len(ech) == (rank(dense) if dense else 0)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=3), min_size=1, max_size=6))
def test_interpolation_recovers_polynomial(coeffs):
    xs = list(range(2, 2 + len(coeffs)))
    ys = [poly_eval(coeffs, x) for x in xs]
    assert interpolate(xs, ys) == [Fraction(c) for c in coeffs]


def test_interpolation_errors():
    with pytest.raises(ValueError):
        interpolate([1, 1], [0, 0])
    with pytest.raises(ValueError):
        interpolate([1, 2], [0])
