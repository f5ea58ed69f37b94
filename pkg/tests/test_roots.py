import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from heckelab.roots import (
    CartanData, cartan_from_text, cartan_to_text, cartan_type, compositions, identity, irrep_dimension,
    length, longest_element, partitions, reduced_word, reflect, semistandard_tableaux, simple_reflection,
    weight_multiplicity, weyl_from_word, weyl_group,
)

TYPES = ["A1", "A2", "A3", "B2", "C3", "D4", "G2"]
ORDERS = {"A1": 2, "A2": 6, "A3": 24, "B2": 8, "C3": 48, "D4": 192, "G2": 12}


def test_cartan_validation():
    with pytest.raises(ValueError):
        CartanData(((2, 1), (1, 2)))
    with pytest.raises(ValueError):
        CartanData(((2, -1), (0, 2)))
    with pytest.raises(ValueError):
        CartanData(((2, -2), (-2, 2)))  # affine, not finite type
    with pytest.raises(ValueError):
        CartanData(((3,),))


def test_text_format_roundtrip():
    c = cartan_type("B2")
    assert cartan_from_text(cartan_to_text(c)) .matrix.tolist() == c.matrix.tolist()
    assert cartan_from_text("2\n2 -1\n-1 2\n").matrix.tolist() == [[2, -1], [-1, 2]]


@pytest.mark.parametrize("t", TYPES)
def test_group_orders(t):
    W = weyl_group(cartan_type(t))
    assert len(W) == ORDERS[t]
    assert len(set(W)) == len(W)


def test_weyl_from_word_examples():
    A2 = cartan_type("A2")
    e = weyl_from_word([], A2)
    assert e.is_identity() and length(e) == 0
    assert weyl_from_word([1, 2, 1], A2) == weyl_from_word([2, 1, 2], A2)
    assert weyl_from_word([1, 1], cartan_type("A1")).is_identity()
    with pytest.raises(IndexError):
        weyl_from_word([3], A2)


def test_length_and_reduced_word_examples():
    A2 = cartan_type("A2")
    assert length(simple_reflection(cartan_type("A1"), 1)) == 1
    w0 = longest_element(A2)
    assert length(w0) == 3
    assert reduced_word(w0) == [1, 2, 1]
    assert reduced_word(identity(A2)) == []
    assert reduced_word(simple_reflection(A2, 2)) == [2]


def test_reflect_examples():
    A2 = cartan_type("A2")
    alpha = A2.simple_root(1)
    assert reflect(1, alpha, A2) == tuple(-x for x in alpha)
    assert reflect(1, (1,), cartan_type("A1")) == (-1,)
    assert reflect(1, (0, 1), A2) == (0, 1)


@pytest.mark.parametrize("t", ["A2", "A3", "B2", "G2"])
def test_length_changes_by_one(t):
    c = cartan_type(t)
    for w in weyl_group(c):
        word = reduced_word(w)
        assert len(word) == length(w)
        assert weyl_from_word(word, c) == w
        for i in range(1, c.rank + 1):
            assert abs(length(w * simple_reflection(c, i)) - length(w)) == 1


@pytest.mark.parametrize("t", ["A2", "A3", "B2", "G2"])
def test_braid_relations(t):
    c = cartan_type(t)
    for i, j in itertools.combinations(range(1, c.rank + 1), 2):
        m = c.braid_order(i, j)
        a = [i if k % 2 == 0 else j for k in range(m)]
        b = [j if k % 2 == 0 else i for k in range(m)]
        assert weyl_from_word(a, c) == weyl_from_word(b, c)
    assert cartan_type("B2").braid_order(1, 2) == 4
    assert cartan_type("G2").braid_order(1, 2) == 6


@given(st.sampled_from(TYPES), st.data())
def test_reflect_involution(t, data):
    c = cartan_type(t)
    lam = tuple(data.draw(st.integers(-5, 5)) for _ in range(c.rank))
    i = data.draw(st.integers(1, c.rank))
    assert reflect(i, reflect(i, lam, c), c) == lam


@pytest.mark.parametrize("t", TYPES)
def test_length_counts_inversions(t):
    c = cartan_type(t)
    w0 = longest_element(c)
    assert length(w0) == len(c.positive_roots)
    assert all(not c.is_positive_root(w0.act(r)) for r in c.positive_roots)


def test_irrep_dimension_examples():
    assert irrep_dimension((1, 1), 2) == 1
    assert irrep_dimension((2, 0), 2) == 3
    assert irrep_dimension((2, 1, 0), 3) == 8
    with pytest.raises(ValueError):
        irrep_dimension((0, 1), 2)


def test_weight_multiplicity_examples():
    assert weight_multiplicity((2, 1, 0), (2, 1, 0), 3) == 1
    assert weight_multiplicity((2, 0), (1, 1), 2) == 1
    assert weight_multiplicity((2, 1, 0), (1, 1, 1), 3) == 2
    with pytest.raises(ValueError):
        weight_multiplicity((2, 0), (1, 0), 2)


def _weyl_dimension(hw):
    # Weyl dimension formula for gl_n, an independent oracle
    from fractions import Fraction
    n = len(hw)
    num = Fraction(1)
    for i in range(n):
        for j in range(i + 1, n):
            num *= Fraction(hw[i] - hw[j] + j - i, j - i)
    return int(num)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_dimension_is_sum_of_multiplicities(n):
    for size in range(0, 5):
        for lam in partitions(size):
            if len(lam) > n:
                continue
            hw = tuple(lam) + (0,) * (n - len(lam))
            dim = irrep_dimension(hw, n)
            assert dim == _weyl_dimension(hw)
            assert dim == sum(weight_multiplicity(hw, wt, n) for wt in compositions(size, n))


def test_tableaux_are_semistandard():
    for t in semistandard_tableaux((3, 1), 3):
        rows = [list(r) for r in t]
        for r in rows:
            assert r == sorted(r)
        for a, b in zip(rows, rows[1:]):
            assert all(x < y for x, y in zip(a, b))
