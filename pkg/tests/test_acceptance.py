"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line."""
import random
import subprocess
import sys
import time
from pathlib import Path

import pytest

from fanchar.action import fixed_subcomplex, validate_action
from fanchar.character import (
    character_data,
    check_q_formulas,
    cross_check_quotient,
    decompose,
    decompose_graded,
    expand_character,
    f_inverse,
    f_transform,
    graded_character,
    poset_weighted_check,
    prime_power_check,
    ungraded_character,
)
from fanchar.cli import emit_report, load_report
from fanchar.corpus import generate_corpus, hexagon, product_of_lines, projective_plane, reflection
from fanchar.exactalg import (
    IntPolynomial,
    cyclotomic,
    divisors,
    moebius_nt,
    moebius_recursive,
    prime_power_base,
)

INSTANCES = Path(__file__).resolve().parent.parent / "instances"


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail=""):
        with capsys.disabled():
            status = "PASS" if ok else "FAIL"
            print(f"\n[acceptance {number:>2}] {status}  {title}" + (f"  ({detail})" if detail else ""))
        assert ok, f"criterion {number} failed: {detail}"

    return emit


def _validated(instance):
    _, fan, g = instance
    return fan, validate_action(fan, g)


def _degree_mults(fan, action):
    return [{l: m for l, m in d.multiplicities.items()} for d in decompose_graded(fan, action).degrees]


def test_criterion_01_projective_plane(report):
    t0 = time.perf_counter()
    fan, action = _validated(projective_plane())
    values = ungraded_character(fan, action)
    dec = decompose(values, action.order)
    degrees = _degree_mults(fan, action)
    elapsed = time.perf_counter() - t0
    ok = (
        expand_character(values, 3) == (3, 3, 3)
        and dec.multiplicities == {1: 3, 3: 0}
        and dec.verdict.is_permutation
        and degrees == [{1: 1, 3: 0}] * 3
        and elapsed < 1
    )
    report(1, "projective plane, order 3", ok, f"chi_u={expand_character(values, 3)}, {elapsed:.3f}s")


def test_criterion_02_product_of_lines(report):
    t0 = time.perf_counter()
    fan, action = _validated(product_of_lines())
    values = ungraded_character(fan, action)
    dec = decompose(values, 4)
    pp = prime_power_check(fan, action)
    degrees = _degree_mults(fan, action)
    elapsed = time.perf_counter() - t0
    ok = (
        expand_character(values, 4) == (4, 2, 4, 2)
        and dec.multiplicities == {1: 2, 2: 1, 4: 0}
        and pp.passed
        and degrees == [{1: 1, 2: 0, 4: 0}, {1: 0, 2: 1, 4: 0}, {1: 1, 2: 0, 4: 0}]
        and elapsed < 1
    )
    report(2, "product of lines, rotation of order 4", ok, f"chi_u={expand_character(values, 4)}, {elapsed:.3f}s")


def test_criterion_03_hexagon(report):
    t0 = time.perf_counter()
    fan, action = _validated(hexagon())
    values = ungraded_character(fan, action)
    dec = decompose(values, 6)
    gd = decompose_graded(fan, action)
    failure = gd.first_failure()
    elapsed = time.perf_counter() - t0
    ok = (
        expand_character(values, 6) == (6, 1, 3, 4, 3, 1)
        and dec.multiplicities == {1: 1, 2: 1, 3: 1, 6: 0}
        and dec.verdict.is_permutation
        and failure is not None
        and failure[0] == 1
        and gd.characters[1][1] == -1
        and elapsed < 1
    )
    report(3, "hexagonal fan, order 6; graded degree 1 not a permutation character", ok,
           f"degree-1 values {expand_character(gd.characters[1], 6)}, {elapsed:.3f}s")


def test_criterion_04_reflection(report):
    fan, action = _validated(reflection())
    fixed = fixed_subcomplex(fan, action, 1)
    g1, gid = graded_character(fan, action, 1), graded_character(fan, action, 2)
    dec = decompose(ungraded_character(fan, action), 2)
    ok = (
        fixed.complex.facets == ((0,), (1,))
        and fan.rays[0][1] == fan.rays[1][1] == 0
        and g1 == gid == IntPolynomial([1, 2, 1])
        and dec.multiplicities == {1: 4, 2: 0}
    )
    report(4, "reflection diag(1,-1)", ok, f"graded {g1}")


def test_criterion_05_corpus(report):
    t0 = time.perf_counter()
    corpus = generate_corpus()
    failures = []
    orders = set()
    for name, fan, g in corpus:
        action = validate_action(fan, g)
        orders.add(action.order)
        base = character_data(fan, action)
        if not check_q_formulas(fan, action, base).passed:
            failures.append((name, "q formulas"))
        for l in divisors(action.order):
            if not cross_check_quotient(fan, action, l, base).passed:
                failures.append((name, f"quotient l={l}"))
        if not decompose({j: e.ungraded for j, e in base.items()}, action.order).verdict.is_permutation:
            failures.append((name, "ungraded verdict"))
    elapsed = time.perf_counter() - t0
    ok = len(corpus) >= 50 and not failures and elapsed < 60
    report(5, "oracle equivalence over the generated corpus", ok,
           f"{len(corpus)} instances, orders {sorted(orders)}, {len(failures)} failures, {elapsed:.2f}s")


def test_criterion_06_cyclotomic(report):
    q = IntPolynomial.monomial(1)
    bad = []
    for l in range(2, 211):
        pp = prime_power_base(l)
        expected = pp[0] if pp else 1
        if cyclotomic(l)(1) != expected:
            bad.append(("value", l))
        if pp:
            p, k = pp
            if cyclotomic(l).degree != p ** (k - 1) * (p - 1):
                bad.append(("degree", l))
    for m in range(1, 65):
        prod = IntPolynomial([1])
        for d in divisors(m):
            prod = prod * cyclotomic(d)
        if prod != q**m - 1:
            bad.append(("product", m))
    report(6, "cyclotomic facts (l <= 210, m <= 64)", not bad, f"{len(bad)} failures")


def test_criterion_07_moebius(report):
    mismatch = [m for m in range(1, 1001) if moebius_nt(m) != moebius_recursive(m)]
    rng = random.Random(7)
    trips = 0
    for _ in range(500):
        n = rng.randint(1, 120)
        values = {j: rng.randint(-10**6, 10**6) for j in divisors(n)}
        trips += f_inverse(f_transform(values, n), n) == values
    report(7, "Moebius agreement (m <= 1000) and f_transform round trips", not mismatch and trips == 500,
           f"{len(mismatch)} mismatches, {trips}/500 round trips")


def _ramanujan_sum(k, j):
    return sum(moebius_recursive(k // e) * e for e in divisors(k) if j % e == 0)


def test_criterion_08_integrality(report):
    # random rational characters: non-negative combinations of rational irreducibles
    rng = random.Random(8)
    bad = 0
    for _ in range(500):
        n = rng.randint(1, 120)
        weights = {k: rng.randint(0, 5) for k in divisors(n)}
        values = {j: sum(w * _ramanujan_sum(k, j) for k, w in weights.items()) for j in divisors(n)}
        dec = decompose(values, n)
        if any(m.denominator != 1 for m in dec.multiplicities.values()) or dec.multiplicities[n] < 0:
            bad += 1
    report(8, "integrality of decomposition coefficients", bad == 0, f"{bad}/500 failures")


def test_criterion_09_poset(report):
    rng = random.Random(9)
    bad = 0
    for _ in range(1000):
        n = rng.randint(1, 60)
        elems = divisors(n)
        fprime = {e: rng.randint(-6, 6) for e in elems}
        for p in reversed(elems):
            up = sum(fprime[x] for x in elems if x % p == 0)
            if up < 0:
                fprime[p] -= up
        cmap = {e: rng.randint(1, 7) for e in elems}
        value, ok = poset_weighted_check(elems, fprime, cmap)
        if not ok or value < 0:
            bad += 1
    report(9, "weighted poset sums on divisor posets (n <= 60)", bad == 0, f"{bad}/1000 failures")


def test_criterion_10_cli_determinism(report):
    cmd = [sys.executable, "-m", "fanchar", "--input", str(INSTANCES / "product_of_lines_rot4.json"), "--format", "json"]
    runs = [subprocess.run(cmd, capture_output=True) for _ in range(3)]
    outputs = [r.stdout for r in runs]
    identical = all(r.returncode == 0 for r in runs) and outputs[0] == outputs[1] == outputs[2]
    try:
        loaded = load_report(outputs[0])
        round_trip = emit_report(loaded, "json") == outputs[0]
    except Exception:
        round_trip = False
    report(10, "CLI json determinism and round trip", identical and round_trip,
           f"{len(outputs[0])} bytes, identical={identical}, round_trip={round_trip}")
