"""Acceptance criteria, run at their stated scale and tolerance.

Each test records its outcome in ``conftest.ACCEPTANCE``; the terminal
summary prints one PASS/FAIL line per criterion.
"""
import itertools
import json
import random
import time
from pathlib import Path

import pytest

import conftest
from drinfeld_oracle import coordinate_drinfeld
from heckelab.convolution import FiniteMap, Kernel, action_rank, convolve, steinberg_algebra
from heckelab.hecke import algebra, random_element, specialize
from heckelab.laurent import LaurentPoly
from heckelab.operators import degeneration_check, verify_realization
from heckelab.roots import irrep_dimension, partitions, weight_multiplicity
from heckelab.schur_weyl import schur_weyl_check
from heckelab.springer import (
    DrinfeldInput, JordanData, component_count, constant_coefficient, dominant_weight, drinfeld_polynomials,
    extreme_flags, leading_coefficient, single_block_input, univariate_degree,
)

KINDS = ["finite", "affine", "degenerate", "nil"]
GOLDEN = Path(__file__).parent / "golden" / "drinfeld.json"


def record(label, case, passed, detail=""):
    conftest.ACCEPTANCE.setdefault(label, []).append((case, bool(passed), detail))
    return passed


# ---------------------------------------------------------------- 1

def test_1_relation_suites():
    start = time.perf_counter()
    failures = []
    for t in ["A1", "A2", "A3", "B2"]:
        for kind in KINDS:
            rep = verify_realization(kind, t, 4)
            if not rep.passed:
                failures.append(f"{kind}/{t}: {[r.relation for r in rep.failures()]}")
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 60
    record("1", "16 suites", ok, f"{elapsed:.1f}s" + (f" {failures}" if failures else ""))
    assert not failures, failures
    assert elapsed < 60, elapsed


# ---------------------------------------------------------------- 2

@pytest.mark.parametrize("t", ["A1", "A2", "B2"])
@pytest.mark.parametrize("kind", KINDS)
def test_2_associativity(kind, t):
    H = algebra(kind, t)
    rng = random.Random(f"accept-{kind}-{t}")
    bad = 0
    for _ in range(200):
        a, b, c = (random_element(H, rng) for _ in range(3))
        if (a * b) * c != a * (b * c):
            bad += 1
    record("2", f"{kind}/{t}", bad == 0, f"200 triples, {bad} failures")
    assert bad == 0


@pytest.mark.parametrize("t", ["A2", "B2"])
def test_2_group_algebra_at_q1(t):
    H = algebra("finite", t)
    G = H.specialized({"q": 1})
    bad = [(w, u) for w in H.W for u in H.W if specialize(H.basis(w) * H.basis(u), {"q": 1}) != G.basis(w * u)]
    record("2", f"Z[W] {t}", not bad, f"{len(H.W) ** 2} products")
    assert not bad


# ---------------------------------------------------------------- 3

@pytest.mark.parametrize("t", ["A1", "A2"])
def test_3_degeneration(t):
    results = degeneration_check(t, 3)
    bad = [r.relation for r in results if not r.passed]
    cross = [r for r in results if r.relation.startswith("cross")]
    ok = not bad and cross and all(r.lowest_degree == 1 for r in cross)
    record("3", t, ok, f"{len(results)} relations at order 3" + (f" failing {bad}" if bad else ""))
    assert ok, bad


# ---------------------------------------------------------------- 4

def _partition_sum(n, d):
    # independent oracle: hook-content formula for dim V_lambda of gl_n
    total = 0
    for lam in partitions(d):
        if len(lam) > n:
            continue
        num = den = 1
        for i, row in enumerate(lam):
            for j in range(row):
                col = sum(1 for r in lam if r > j)
                num *= n + j - i
                den *= (row - j) + (col - i) - 1
        total += (num // den) ** 2
    return total


SW_CASES = [(1, 3, 1), (2, 2, 10), (2, 3, 20), (2, 4, 35), (3, 2, 45), (3, 3, 165)]


def test_4_schur_weyl():
    start = time.perf_counter()
    for n, d, value in SW_CASES:
        oracle = _partition_sum(n, d)
        rep = schur_weyl_check(n, d)
        ok = rep.passed and rep.commutant_dim == rep.image_dim == oracle == value
        record("4", f"({n},{d})", ok, f"commutant {rep.commutant_dim} image {rep.image_dim} oracle {oracle}")
        assert ok, (n, d, rep.to_json(), oracle)
    elapsed = time.perf_counter() - start
    record("4", "runtime", elapsed < 120, f"{elapsed:.1f}s")
    assert elapsed < 120


# ---------------------------------------------------------------- 5

@pytest.mark.parametrize("lam", [tuple(p) for d in (1, 2, 3, 4) for p in partitions(d)], ids=str)
def test_5_springer_components(lam):
    start = time.perf_counter()
    x = JordanData(lam)
    n = x.d
    hw = dominant_weight(x, n)
    total, details = component_count(x, "ALL", n)
    ok = total == irrep_dimension(hw, n)
    for r in details:
        ok = ok and r.count == weight_multiplicity(hw, r.flag_type, n) and r.residual == 0
    record("5", str(lam), ok, f"{total} components = dim V{hw}, {time.perf_counter() - start:.1f}s")
    assert ok


# ---------------------------------------------------------------- 6

def _golden_cases():
    data = json.loads(GOLDEN.read_text())
    return data["variables"], data["cases"]


@pytest.mark.parametrize("case", _golden_cases()[1], ids=lambda c: f"{c['family']}-{c['jordan']}-n{c['steps']}")
def test_6_drinfeld_shape(case):
    V = tuple(_golden_cases()[0])
    s = [LaurentPoly.parse(t, V) for t in case["s"]]
    x = JordanData(tuple(case["jordan"]))
    n = case["steps"]
    got = drinfeld_polynomials(DrinfeldInput(s, LaurentPoly.var(V, "q"), x), n)
    fmax, fmin = extreme_flags(x, n)
    ok = [p.with_variables(V) for p in got] == coordinate_drinfeld(x.jordan_type, s, n, V)
    for i, p in enumerate(got, 1):
        ok = ok and univariate_degree(p) == fmax.dims()[i] - fmin.dims()[i]
        ok = ok and leading_coefficient(p) == 1 and not constant_coefficient(p).is_zero()
    record("6a", f"{case['family']} {case['jordan']} n={n}", ok, "degrees, monic, nonzero constant term")
    assert ok


@pytest.mark.parametrize("k,n", [(k, n) for n in (2, 3, 4) for k in range(1, n)])
def test_6_single_block_one_nontrivial_index(k, n):
    # stated shape: exactly one P_j != 1, at j = k, of the form u - q^e a
    P = drinfeld_polynomials(single_block_input(k), n)
    nontrivial = [j for j, p in enumerate(P, 1) if p != 1]
    ok = nontrivial == [k] and univariate_degree(P[k - 1]) == 1
    record("6b", f"J_{k}, n={n}", ok, f"nontrivial at {nontrivial}: {[p.to_str() for p in P]}")
    assert ok, [p.to_str() for p in P]


# ---------------------------------------------------------------- 7

def _maps(m, n):
    for images in itertools.product(range(n), repeat=m):
        yield FiniteMap(tuple(range(m)), tuple(range(n)), dict(enumerate(images)))


def _check_map(mu):
    alg = steinberg_algebra(mu)
    fibers = {x: mu.fiber(x) for x in mu.target}
    if alg.dimension != sum(len(f) ** 2 for f in fibers.values()):
        return False
    zero = Kernel(mu.source, mu.source)
    total = zero
    for x in alg.blocks:
        e = alg.block_unit(x)
        total = total + e
        if convolve(e, e) != e:
            return False
        for y in alg.blocks:
            if y != x and convolve(e, alg.block_unit(y)) != zero:
                return False
        for z in alg.basis():
            # the block of x is e * A * e and is a full matrix algebra on the fiber
            if not alg.contains(convolve(convolve(e, z), e)):
                return False
    if total != alg.unit:
        return False
    return all(action_rank(mu, x) == len(f) ** 2 for x, f in fibers.items() if f)


def test_7_convolution_exhaustive():
    start = time.perf_counter()
    count = bad = 0
    for m in range(1, 6):
        for n in range(1, 6):
            for mu in _maps(m, n):
                count += 1
                if not _check_map(mu):
                    bad += 1
    record("7", "all maps", bad == 0, f"{count} maps, {bad} failures, {time.perf_counter() - start:.1f}s")
    assert bad == 0
