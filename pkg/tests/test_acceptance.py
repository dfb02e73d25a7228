"""Exit criteria. Run with ``pytest tests/test_acceptance.py``; a summary
section lists one PASS/FAIL line per criterion."""
import json
import random
import subprocess
import sys
import time
from math import gcd
from pathlib import Path

import pytest

from conftest import enum_hfold, int_add
from sumsetgrowth.errors import GcdNotOne
from sumsetgrowth.growth import detect_stabilization, linear_poly, poly_equal, slice_thresholds
from sumsetgrowth.instances import enumeration_box, random_suite
from sumsetgrowth.series import rational_form_check
from sumsetgrowth.structure import (
    frobenius_number,
    frobenius_table,
    normalize,
    structure_sets,
    verify_multilinear,
)
from sumsetgrowth.sumset import (
    GrowthTable,
    brute_force_sumset,
    box_points,
    combined_sumset,
    growth_table,
    integer_problem,
    symbol_count,
)

SUITE_SIZE = 200
ENUMERATION_BUDGET = 1_000_000  # formal symbols per problem for criterion 1
MAX_EXTENT = 6


def threshold_limit(r):
    return 30 if r == 1 else 10


@pytest.fixture(scope="module")
def suite():
    s = random_suite(SUITE_SIZE)
    assert len(s) == SUITE_SIZE
    assert all(inst.problem.r <= 3 and max(inst.problem.k) <= 4 for inst in s)
    assert all(
        inst.problem.spec.order <= 8 for inst in s if inst.family == "table"
    )
    return s


@pytest.fixture(scope="module")
def stabilization(suite):
    return [
        detect_stabilization(inst.problem, threshold_limit(inst.problem.r))
        for inst in suite
    ]


@pytest.mark.acceptance(1, "oracle equivalence: memoized == brute == enumeration on 200 problems")
def test_oracle_equivalence(suite):
    start = time.perf_counter()
    families = set()
    points = 0
    for inst in suite:
        p = inst.problem
        families.add(inst.family)
        box = enumeration_box(p, MAX_EXTENT, ENUMERATION_BUDGET)
        assert max(box) <= MAX_EXTENT
        memo = growth_table(p, box)
        brute = growth_table(p, box, "brute")
        assert memo.gamma == brute.gamma, inst
        for h in box_points(box):
            assert symbol_count(p, h) <= ENUMERATION_BUDGET
            assert len(brute_force_sumset(p, h)) == memo.gamma[h], (inst, h)
            points += 1
    elapsed = time.perf_counter() - start
    print(f"criterion 1: {len(suite)} problems, {points} points, {elapsed:.1f}s")
    assert families == {"n0", "z2", "cyclic", "table"}
    assert elapsed < 300


@pytest.mark.acceptance(2, "eventual polynomiality within T, degree bound d_i <= k_i - 1")
def test_eventual_polynomiality(suite, stabilization):
    failures, violations = [], []
    for inst, rep in zip(suite, stabilization):
        if not rep.stabilized:
            failures.append(inst.problem)
            continue
        assert rep.search_limit <= threshold_limit(inst.problem.r)
        for i, k in enumerate(inst.problem.k):
            if rep.fitted.degree(i) > k - 1:
                violations.append((inst.problem, i))
    print(f"criterion 2: {len(failures)} not stabilized, {len(violations)} degree violations")
    assert not failures
    assert not violations


@pytest.mark.acceptance(3, "derived fixtures {0,3,5} and {0,2,3} recomputed by enumeration")
def test_derived_fixtures():
    # {0,3,5}: table by multiset enumeration, then fit and structure from it
    p = integer_problem([0], [0, 3, 5])
    T, w = 10, 2
    box = (T + 2 + w,)
    enum = {(h,): len(brute_force_sumset(p, (h,))) for h in range(box[0] + 1)}
    assert enum == {(h,): len(enum_hfold([0, 3, 5], h, int_add, 0)) for h in range(box[0] + 1)}
    rep = detect_stabilization(p, T, w, table=GrowthTable(box, enum, p))
    assert poly_equal(rep.fitted.coefficients, linear_poly([5], -5))
    assert rep.fitted.thresholds == (3,)
    s = structure_sets(normalize([0], [[0, 3, 5]]))
    assert s.delta == 6 and s.C == (0, 3, 5, 6) and s.D == (0, 2)
    for h in range(s.h_star[0], 15):
        assert s.predicted((h,)) == enum_hfold([0, 3, 5], h, int_add, 0)

    # {0,2,3}
    p = integer_problem([0], [0, 2, 3])
    enum = {(h,): len(brute_force_sumset(p, (h,))) for h in range(box[0] + 1)}
    rep = detect_stabilization(p, T, w, table=GrowthTable(box, enum, p))
    assert poly_equal(rep.fitted.coefficients, linear_poly([3], 0))
    s = structure_sets(normalize([0], [[0, 2, 3]]))
    assert s.delta == 1 and s.C == (0,) and s.D == ()
    for h in range(s.h_star[0], 15):
        assert s.predicted((h,)) == enum_hfold([0, 2, 3], h, int_add, 0)


@pytest.mark.acceptance(4, "multilinear identity fit == sum a*_i h_i + b* + 1 - Delta")
def test_multilinear_identity(suite, stabilization):
    checked = 0
    for inst, rep in zip(suite, stabilization):
        if inst.family != "n0":
            continue
        p = inst.problem
        try:
            norm = normalize(list(p.base), [list(a) for a in p.summands])
        except GcdNotOne:
            continue
        s = structure_sets(norm, 60)
        assert rep.stabilized
        expected = linear_poly(norm.a_star, norm.b_star + 1 - s.delta)
        assert poly_equal(rep.fitted.coefficients, expected), (inst, str(rep.fitted))
        ok, problems = verify_multilinear(norm, s, rep.fitted)
        assert ok, problems
        checked += 1
    print(f"criterion 4: {checked} gcd-1 N0 instances")
    assert checked >= 20


@pytest.mark.acceptance(5, "Frobenius values and Sylvester oracles on 100 coprime pairs")
def test_frobenius():
    assert frobenius_number([3, 5]) == 7
    assert frobenius_number([6, 10, 15]) == 29
    rng = random.Random(5)
    pairs = set()
    while len(pairs) < 100:
        a, b = rng.randint(1, 50), rng.randint(1, 50)
        if gcd(a, b) == 1:
            pairs.add((a, b))
    for a, b in sorted(pairs):
        f, gaps = frobenius_table([a, b])
        assert f == a * b - a - b
        assert gaps == (a - 1) * (b - 1) // 2


@pytest.mark.acceptance(6, "numerator terminates, beta = 0, tail agrees with the fit")
def test_rational_form(suite, stabilization):
    for inst, rep in zip(suite, stabilization):
        p = inst.problem
        # margin measured from the per-direction threshold that holds for all
        # values of the other coordinates (the numerator's support depends on it)
        u = slice_thresholds(rep.table, p.k)
        assert None not in u, inst
        H = tuple(ui + ki + 2 for ui, ki in zip(u, p.k))
        out = rational_form_check(p, H, max_threshold=threshold_limit(p.r))
        assert out["terminated"], (inst, out["numerator"])
        assert min(out["numerator"]["margin"]) >= 2
        assert out["beta"] == [0] * p.r
        assert not out["numerator"]["anomalies"]
        assert out["tail_agrees"], (inst, out["tail_mismatches"])


@pytest.mark.acceptance(7, "two traversal orders give identical tables and sets")
def test_commutativity_witness(suite):
    for inst in suite:
        p = inst.problem
        box = enumeration_box(p, MAX_EXTENT, ENUMERATION_BUDGET)
        orders = [tuple(range(p.r)), tuple(reversed(range(p.r)))]
        if p.r == 3:
            orders.append((1, 2, 0))
        tables = [growth_table(p, box, order=o, retain="all") for o in orders]
        first = tables[0]
        for other in tables[1:]:
            assert other.gamma == first.gamma
            for h in first.points():
                assert other.sets[h] == first.sets[h]
        # a single-summand problem has only one order; compare with from-scratch sums
        if p.r == 1:
            for h in first.points():
                assert first.sets[h] == combined_sumset(p, h)


FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
CLI_RUNS = [
    ["validate", "three_five.json"],
    ["validate", "broken_assoc.json"],
    ["grow", "three_five.json", "--box", "4"],
    ["grow", "mixed_product.json", "--box", "3,3", "--format", "json"],
    ["fit", "three_five.json"],
    ["fit", "two_summands.json"],
    ["structure", "three_five.json"],
    ["structure", "even.json"],
    ["series", "three_five.json", "--box", "20"],
    ["series", "cyclic_monoid.json", "--box", "8,8"],
    ["frobenius", "6", "10", "15"],
    ["oracle-check", "two_summands.json", "--box", "4,4"],
]


@pytest.mark.acceptance(8, "byte-identical CLI output across repeated runs")
def test_determinism():
    for argv in CLI_RUNS:
        args = [argv[0]] + [str(FIXTURES / a) if a.endswith(".json") else a for a in argv[1:]]
        runs = [
            subprocess.run([sys.executable, "-m", "sumsetgrowth", *args], capture_output=True)
            for _ in range(2)
        ]
        assert runs[0].stdout == runs[1].stdout, argv
        assert runs[0].returncode == runs[1].returncode, argv
        assert runs[0].stdout, argv
    # reports embed their run configuration
    res = subprocess.run(
        [sys.executable, "-m", "sumsetgrowth", "fit", str(FIXTURES / "three_five.json")],
        capture_output=True, text=True,
    )
    assert json.loads(res.stdout)["config"]["window"] == 2
