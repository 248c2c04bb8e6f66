"""Acceptance criteria 1-8; each test records one PASS/FAIL line."""
import random
import time
from fractions import Fraction

import pytest

from conftest import record
from oracles import LOOP_SERIES
from pontrjagin.catalog import catalog_space, splitting_series_check
from pontrjagin.envelope import compare_presentations, enveloping, pbw_series, rank_compare
from pontrjagin.graded import GradedGenerator, PolyRing
from pontrjagin.groebner import groebner_basis, is_member, is_regular_sequence
from pontrjagin.newton import SymmetricFunctionVector, formal_y, newton_sigma_from_y, newton_y_from_sigma
from pontrjagin.sullivan import build_formal_model, homotopy_lie, pairing_eval, quadratic_part

N = 20
GOLDEN = [("SU_odd", {"n": 1}), ("SU_odd", {"n": 2}), ("SU_odd", {"n": 3}), ("SU_even", {"n": 2}),
          ("SU_even", {"n": 3}), ("SO_even", {"n": 2}), ("SO_even", {"n": 3}), ("SO8", {}), ("E6T4", {})]
INTEGRAL = [("SU_odd", {"n": 1}), ("SU_odd", {"n": 2}), ("SU_even", {"n": 1}), ("SU_even", {"n": 2}),
            ("SO_even", {"n": 2}), ("SO8", {}), ("E6T4", {}), ("A_partial", {"n": 4, "k": 2})]
SPLITTING = [(3, 1), (4, 2), (5, 3)]


class Case:
    def __init__(self, name, params):
        t = time.perf_counter()
        self.spec = catalog_space(name, params)
        self.model = build_formal_model(self.spec.cohomology)
        self.lie = homotopy_lie(self.model)
        self.envelope = enveloping(self.lie)
        self.series = self.envelope.series(N)
        self.seconds = time.perf_counter() - t


_cache = {}


def case(name, params):
    key = (name, tuple(sorted(params.items())))
    if key not in _cache:
        _cache[key] = Case(name, params)
    return _cache[key]


def test_criterion_1_golden_presentations():
    bad = []
    slowest = 0.0
    for name, params in GOLDEN:
        c = case(name, params)
        rep = compare_presentations(c.envelope, c.spec.expected_rational, N)
        t = time.perf_counter()
        golden_series = c.spec.expected_rational.series(N)
        seconds = c.seconds + time.perf_counter() - t
        slowest = max(slowest, seconds)
        if not rep.ok:
            bad.append(f"{c.spec.label}: {rep.detail}")
        if list(c.series) != list(golden_series) or list(c.series) != LOOP_SERIES[c.spec.label][3]:
            bad.append(f"{c.spec.label}: series {list(c.series)}")
        if seconds >= 10:
            bad.append(f"{c.spec.label}: {seconds:.1f}s")
    assert record(1, not bad, f"golden presentations for {len(GOLDEN)} cases, series to t^{N}, "
                              f"slowest case {slowest:.2f}s" + (f"; {bad}" if bad else "")), bad


def test_criterion_2_pbw_oracle():
    bad = [case(n, p).spec.label for n, p in GOLDEN
           if list(case(n, p).series) != list(pbw_series(case(n, p).lie, N))]
    assert record(2, not bad, f"normal-basis counts equal PBW series through t^{N} "
                              f"for {len(GOLDEN)} cases" + (f"; failing {bad}" if bad else "")), bad


def _bracket(L, x, y):
    return {L.basis[m].name: c for m, c in L.basis_bracket(L.index(x), L.index(y)).items()}


def test_criterion_3_bracket_values():
    checks = {}
    for n in (1, 2, 3):
        m = case("SU_odd", {"n": n}).model
        checks[f"SU_odd n={n} pairings"] = all(
            pairing_eval(m.ring.gen(g.name) ** 2, [g, g]) == 2 for g in m.u)
    L = case("SO8", {}).lie
    checks["SO8 [a1,a2]=b1"] = _bracket(L, "a1", "a2") == {"b1": 1}
    checks["SO8 [a1,a1]=2b1"] = _bracket(L, "a1", "a1") == {"b1": 2}
    checks["SO8 [a2,a2]=2b1"] = _bracket(L, "a2", "a2") == {"b1": 2}
    m = case("E6T4", {}).model
    d1 = quadratic_part(m)[m.v[0].name]
    checks["E6 quadratic part"] = d1 == 12 * sum((u ** 2 for u in m.ring.gens_as_polys()), m.ring.zero())
    bad = [k for k, ok in checks.items() if not ok]
    assert record(3, not bad, "pairing <x_i^2; sa_i, sa_i> = 2, SO8 brackets, E6 quadratic part 12*sum u_i^2"
                  + (f"; failing {bad}" if bad else "")), bad


def test_criterion_4_integral_ranks():
    bad = []
    for name, params in INTEGRAL:
        spec = catalog_space(name, params)
        rational = enveloping(homotopy_lie(build_formal_model(spec.cohomology)))
        rep = rank_compare(spec.expected_integral, rational, N)
        if not rep.ok:
            bad.append(f"{spec.label} at degree {rep.degree}")
    assert record(4, not bad, f"integral ranks equal rational ranks through t^{N} for {len(INTEGRAL)} cases"
                  + (f"; failing {bad}" if bad else "")), bad


def test_criterion_5_newton():
    R, y = formal_y(3)
    y1, y2, y3 = R.gens_as_polys()
    s = newton_sigma_from_y(y)
    ok = s[2] == y1 ** 2 - 2 * y2 and s[3] == s[2] * y1 - s[1] * y2 + 3 * y3
    ideal = groebner_basis([y1 ** 2 - 2 * y2, y1 * y2 - 3 * y3])
    ok = ok and is_member(s[2], ideal) and is_member(s[3], ideal)
    rng = random.Random(5)
    trips = 0
    for _ in range(100):
        vals = [Fraction(rng.randint(-50, 50), rng.randint(1, 12)) for _ in range(rng.randint(1, 8))]
        v = SymmetricFunctionVector("y", vals)
        trips += newton_y_from_sigma(newton_sigma_from_y(v)).entries == v.entries
    ok = ok and trips == 100
    assert record(5, ok, f"Newton formulas, sigma_2 = sigma_3 = 0 modulo the E6 relations, "
                         f"{trips}/100 rational round trips"), trips


def test_criterion_6_splitting():
    bad = []
    for n, k in SPLITTING:
        c = case("A_partial", {"n": n, "k": k})
        rep = splitting_series_check("A_partial", {"n": n, "k": k}, N, series=c.series)
        if not rep.ok:
            bad.append((n, k, rep.degree))
    assert record(6, not bad, f"A_partial (n,k) in {SPLITTING}: series = (1+t)^k x polynomial factor "
                              f"through t^{N}" + (f"; failing {bad}" if bad else "")), bad


def test_criterion_7_regular_sequences():
    cases = GOLDEN + [("SU_even", {"n": 1}), ("SO_even", {"n": 1})] + \
        [("A_partial", {"n": n, "k": k}) for n, k in SPLITTING]
    bad = []
    for name, params in cases:
        pres = catalog_space(name, params).cohomology
        if not is_regular_sequence(pres.relations, pres.ring):
            bad.append(name)
    R = PolyRing([GradedGenerator("x1", 2), GradedGenerator("x2", 2)])
    x1, x2 = R.gens_as_polys()
    p2 = x1 ** 2 + x2 ** 2
    negative = not is_regular_sequence([p2, p2 ** 2])
    assert record(7, not bad and negative,
                  f"{len(cases)} catalog presentations regular; [P2, P2^2] rejected: {negative}"), bad


def test_criterion_8_properties():
    everything = GOLDEN + [("A_partial", {"n": n, "k": k}) for n, k in SPLITTING]
    confluence = [case(n, p).spec.label for n, p in everything if case(n, p).envelope.confluence_failures(N)]
    laws = [case(n, p).spec.label for n, p in everything
            if case(n, p).lie.antisymmetry_violations() or case(n, p).lie.jacobi_violations()]
    rng = random.Random(8)
    R = PolyRing.from_names(["x1", "x2", "x3"])
    xs = R.gens_as_polys()
    ideal = groebner_basis([xs[0] ** 2 + xs[1] ** 2 + xs[2] ** 2, xs[0] * xs[1] * xs[2] ** 2 - xs[1] ** 4,
                            xs[0] ** 3 * xs[2] ** 3 + xs[1] ** 6])
    stable = 0
    for _ in range(500):
        p = R.zero()
        for _ in range(4):
            e = [rng.randint(0, 4) for _ in xs]
            mono = R.constant(Fraction(rng.randint(-9, 9), rng.randint(1, 4)))
            for x, k in zip(xs, e):
                mono = mono * x ** k
            p = p + mono
        once = ideal.reduce(p)
        stable += ideal.reduce(once) == once and is_member(p - once, ideal)
    ok = not confluence and not laws and stable == 500
    assert record(8, ok, f"confluence to t^{N} and Lie laws on {len(everything)} cases, "
                         f"normal-form idempotence {stable}/500"
                  + (f"; confluence {confluence}, laws {laws}" if confluence or laws else "")), (confluence, laws)
