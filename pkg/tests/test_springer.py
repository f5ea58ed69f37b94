import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from drinfeld_oracle import coordinate_drinfeld
from heckelab.finite_field import GF
from heckelab.laurent import LaurentPoly
from heckelab.linalg import QQ
from heckelab.roots import compositions, partitions
from heckelab.springer import (
    DrinfeldInput, FlagType, JordanData, PartialFlag, all_flags, component_count, component_count_type,
    constant_coefficient, count_fixed_flags, count_fixed_flags_naive, dominant_weight, drinfeld_polynomials,
    extreme_flags, fiber_dimension, is_x_stable, leading_coefficient, multiplicity_check, parse_scalar,
    single_block_input, subspace_contains, subspaces, univariate_degree,
)

GOLDEN = Path(__file__).parent / "golden" / "drinfeld.json"
J = JordanData


def test_dominant_weight_examples():
    assert dominant_weight(J((1, 1)), 2) == (2, 0)
    assert dominant_weight(J((2,)), 2) == (1, 1)
    assert dominant_weight(J((2, 1)), 2) == (2, 1)
    with pytest.raises(ValueError):
        dominant_weight(J((3,)), 2)


@pytest.mark.parametrize("d", range(1, 7))
def test_dominant_weight_is_dominant(d):
    for lam in partitions(d):
        for n in range(lam[0], d + 1):
            wt = dominant_weight(J(lam), n)
            assert list(wt) == sorted(wt, reverse=True)
            assert sum(wt) == d


def test_extreme_flag_examples():
    fmax, fmin = extreme_flags(J((2,)), 2)
    assert fmax == fmin
    assert fmax.subspaces[1] == [[1, 0]]
    fmax, fmin = extreme_flags(J((1, 1)), 2)
    assert fmax.dims() == [0, 2, 2] and fmin.dims() == [0, 0, 2]
    fmax, fmin = extreme_flags(J((2, 1)), 2)
    assert fmax.dims()[1] == 2 and fmin.dims()[1] == 1


def test_is_x_stable_examples():
    for lam in [(2,), (2, 1), (3, 1), (2, 2)]:
        for F in extreme_flags(J(lam), max(lam)):
            assert is_x_stable(F, J(lam))
    bad = PartialFlag(QQ, 2, [[], [[0, 1]], [[1, 0], [0, 1]]])
    assert not is_x_stable(bad, J((2,)))
    F2 = GF(3)
    for fl in all_flags(FlagType(2, (1, 1)), F2):
        assert is_x_stable(fl, J((1, 1)))


def test_partial_flag_validation():
    with pytest.raises(ValueError):
        PartialFlag(QQ, 2, [[], [[1, 0]], [[0, 1]]])
    with pytest.raises(ValueError):
        PartialFlag(QQ, 2, [[], [[1, 0]]])
    fl = PartialFlag(QQ, 2, [[], [[2, 4]], [[1, 0], [0, 1]]])
    assert fl.subspaces[1] == [[1, 2]]  # canonical echelon form
    assert fl.flag_type() == FlagType(2, (1, 1))


def test_subspace_enumeration_counts():
    # Gaussian binomials: [4 choose 2]_q = (q^4-1)(q^3-1)/((q^2-1)(q-1))
    for q in (2, 3, 4):
        F = GF(q)
        got = list(subspaces(2, 4, F))
        want = (q**4 - 1) * (q**3 - 1) // ((q**2 - 1) * (q - 1))
        assert len(got) == want
        assert len({tuple(map(tuple, s)) for s in got}) == want


def test_count_examples():
    assert count_fixed_flags(J((1, 1)), FlagType(2, (1, 1)), 2) == 3
    assert count_fixed_flags(J((1, 1)), FlagType(2, (1, 1)), 3) == 4
    for q in (2, 3, 4, 5):
        assert count_fixed_flags(J((2,)), FlagType(2, (1, 1)), q) == 1
    assert count_fixed_flags(J((1, 1)), FlagType(2, (2, 0)), 7) == 1
    with pytest.raises(ValueError):
        count_fixed_flags(J((1, 1, 1, 1, 1)), FlagType(1, (5,)), 2)
    with pytest.raises(ValueError):
        count_fixed_flags(J((1, 1)), FlagType(2, (1, 1)), 6)


@pytest.mark.parametrize("d", [1, 2, 3])
@pytest.mark.parametrize("q", [2, 3])
def test_count_matches_naive_oracle(d, q):
    for lam in partitions(d):
        for n in range(1, d + 1):
            for t in compositions(d, n):
                ft = FlagType(n, t)
                assert count_fixed_flags(J(lam), ft, q) == count_fixed_flags_naive(J(lam), ft, q), (lam, t, q)


@pytest.mark.parametrize("lam", [tuple(p) for d in (1, 2, 3, 4) for p in partitions(d)])
def test_stable_flags_between_extremes_over_f2(lam):
    x = J(lam)
    n = x.d
    F = GF(2)
    fmax, fmin = extreme_flags(x, n, F)
    assert is_x_stable(fmax, x) and is_x_stable(fmin, x)
    types = compositions(x.d, n) if x.d < 4 else [(1, 1, 1, 1), (2, 1, 1, 0), (1, 2, 0, 1)]
    for t in types:
        for fl in all_flags(FlagType(n, t), F):
            if is_x_stable(fl, x):
                for i in range(n + 1):
                    assert subspace_contains(fl.subspaces[i], fmin.subspaces[i], F)
                    assert subspace_contains(fmax.subspaces[i], fl.subspaces[i], F)


def test_component_examples():
    assert component_count(J((1, 1)), "ALL", 2)[0] == 3
    assert component_count(J((2,)), "ALL", 2)[0] == 1
    total, details = component_count(J((1, 1)), "ALL", 2)
    assert sorted(r.count for r in details) == [1, 1, 1]


@pytest.mark.parametrize("lam", [(1, 1, 1), (2, 1), (3,), (2, 2), (2, 1, 1)])
def test_point_count_polynomials(lam):
    x = J(lam)
    n = x.d
    for t in compositions(x.d, n):
        r = component_count_type(x, FlagType(n, t))
        assert r.residual == 0
        if r.count:
            assert len(r.coefficients) - 1 >= r.degree
            assert all(c.denominator == 1 and c >= 0 for c in r.coefficients)
            assert r.coefficients[r.degree] == r.count
            assert all(c == 0 for c in r.coefficients[r.degree + 1:])


def test_fiber_dimension_formula():
    # x = 0: the full flag variety of C^3 has dimension 3
    assert fiber_dimension(J((1, 1, 1)), FlagType(3, (1, 1, 1))) == 3
    # regular nilpotent: a point
    assert fiber_dimension(J((3,)), FlagType(3, (1, 1, 1))) == 0


# ---------------------------------------------------------------- Drinfeld


def _golden():
    data = json.loads(GOLDEN.read_text())
    return data["variables"], data["cases"]


@pytest.mark.parametrize("case", _golden()[1], ids=lambda c: f"{c['family']}-{c['jordan']}-n{c['steps']}")
def test_drinfeld_golden(case):
    V = tuple(_golden()[0])
    s = [LaurentPoly.parse(t, V) for t in case["s"]]
    q = LaurentPoly.var(V, "q")
    got = drinfeld_polynomials(DrinfeldInput(s, q, J(case["jordan"])), case["steps"])
    assert [p.with_variables(V) for p in got] == [LaurentPoly.parse(t, V) for t in case["polynomials"]]


def test_drinfeld_examples():
    a = parse_scalar("a")
    assert [p.to_str() for p in drinfeld_polynomials(DrinfeldInput([a], 1, J((1,))), 2)] == ["u - a", "1"]
    assert [p.to_str() for p in drinfeld_polynomials(single_block_input(2), 2)] == ["1", "1"]
    A, B = parse_scalar("a", ("a", "b")), parse_scalar("b", ("a", "b"))
    P = drinfeld_polynomials(DrinfeldInput([A, B], 1, J((1, 1))), 2)
    V = P[0].variables
    u = LaurentPoly.var(V, "u")
    assert P[0] == (u - A.with_variables(V)) * (u - B.with_variables(V))
    assert P[1] == 1


def test_drinfeld_relation_enforced():
    s = [parse_scalar(t, ("a",)) for t in ["3a", "a"]]
    assert drinfeld_polynomials(DrinfeldInput(s, 3, J((2,))), 2)
    with pytest.raises(ValueError):
        drinfeld_polynomials(DrinfeldInput(s, 2, J((2,))), 2)
    with pytest.raises(ValueError):
        drinfeld_polynomials(DrinfeldInput([parse_scalar("0", ("a",))], 1, J((1,))), 2)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=3), st.integers(0, 2), st.data())
def test_drinfeld_matches_oracle(blocks, extra, data):
    x = J(tuple(blocks))
    n = x.largest_block + extra
    V = ("u", "q") + tuple(f"a{k}" for k in range(len(blocks)))
    q = LaurentPoly.var(V, "q")
    s = []
    for k, b in enumerate(x.jordan_type):
        base = LaurentPoly.var(V, f"a{k}") * data.draw(st.sampled_from([1, 2, Fraction(1, 3)]))
        s += [base * q ** (b - 1 - j) for j in range(b)]
    got = drinfeld_polynomials(DrinfeldInput(s, q, x), n)
    want = coordinate_drinfeld(x.jordan_type, s, n, V)
    assert [p.with_variables(V) for p in got] == want
    fmax, fmin = extreme_flags(x, n)
    for i, p in enumerate(got, 1):
        assert univariate_degree(p) == fmax.dims()[i] - fmin.dims()[i]
        assert leading_coefficient(p) == 1
        assert not constant_coefficient(p).is_zero()


def test_multiplicity_check_report():
    rep = multiplicity_check(J((2, 1)), 3)
    assert rep["pass"] and rep["components"] == rep["irrep_dimension"] == 8
    assert sum(r["multiplicity"] for r in rep["per_type"]) == 8
