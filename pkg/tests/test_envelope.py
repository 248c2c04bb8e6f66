from fractions import Fraction

import pytest

from oracles import LOOP_SERIES, SU5T2_LOW
from pontrjagin.catalog import catalog_space
from pontrjagin.envelope import (compare_presentations, enveloping, lie_laws, pbw_series, rank_compare,
                                 verify_presentation)
from pontrjagin.errors import ContextError, GradingError, OrientationError
from pontrjagin.graded import GradedGenerator, HilbertSeries
from pontrjagin.integral import integral_presentation
from pontrjagin.noncomm import INTEGRAL, NCPoly, NCPresentation, RewriteSystem, free_graded_commutative
from pontrjagin.sullivan import LieAlgebraData, build_formal_model, homotopy_lie


def lie_of(name, params=None):
    return homotopy_lie(build_formal_model(catalog_space(name, params or {}).cohomology))


# --- noncommutative rewriting ---------------------------------------------------


def test_free_algebra_on_one_odd_generator():
    a = (GradedGenerator("a", 1),)
    T = NCPresentation(a, ())
    assert list(T.series(8)) == [1] * 9
    assert T.normal_basis(2)[2] == [(0, 0)]


def test_free_algebra_on_two_generators_counts_words():
    gens = (GradedGenerator("p", 1), GradedGenerator("q", 1))
    assert list(NCPresentation(gens, ()).series(5)) == [1, 2, 4, 8, 16, 32]


def test_two_odd_generators_with_square_and_swap_rules():
    gens = (GradedGenerator("a1", 1), GradedGenerator("a2", 1))
    a1, a2 = (NCPoly.word(gens, n) for n in ("a1", "a2"))
    P = NCPresentation(gens, (a2 * a2 - a1 * a1, a2 * a1 + a1 * a2))
    basis = P.normal_basis(4)
    assert len(basis[2]) == 2
    assert P.reduce(a2 * a2) == a1 * a1
    assert P.reduce(a2 * a1) == -(a1 * a2)
    assert P.confluence_failures(8) == []


def test_exterior_algebra_series():
    gens = tuple(GradedGenerator(n, 1) for n in ("e", "f", "g"))
    E = free_graded_commutative(gens)
    assert list(E.series(4)) == [1, 3, 3, 1, 0]


def test_orientation_error():
    gens = (GradedGenerator("p", 2), GradedGenerator("q", 2))
    rs = RewriteSystem(gens, 4)
    with pytest.raises(OrientationError):
        rs.add_rule((0,), {(1,): Fraction(1)})


def test_inhomogeneous_relation_rejected():
    gens = (GradedGenerator("p", 1), GradedGenerator("q", 2))
    p, q = (NCPoly.word(gens, n) for n in ("p", "q"))
    with pytest.raises(GradingError):
        NCPresentation(gens, (p * p - p,))
    with pytest.raises(GradingError):
        NCPresentation(gens, (Fraction(1, 2) * q,), INTEGRAL)
    with pytest.raises(ContextError):
        NCPoly.word(gens, "r")


# --- enveloping algebras ---------------------------------------------------------


def test_su5t2_series_matches_pbw_and_oracle():
    L = lie_of("SU_odd", {"n": 2})
    U = enveloping(L)
    assert list(U.series(6)) == SU5T2_LOW
    assert U.series(20) == pbw_series(L, 20)
    assert list(U.series(20)) == LOOP_SERIES["SU_odd(n=2)"][3]


def test_elimination_is_logged():
    U = enveloping(lie_of("SU_odd", {"n": 2}))
    assert "b1" not in U.names
    (e,) = U.eliminations
    assert (e.generator, e.expression, e.reason) == ("b1", "a1*a1", "[a1,a1] = 2*b1")


def test_without_elimination_same_series():
    L = lie_of("SO8")
    assert enveloping(L, eliminate=False).series(12) == enveloping(L).series(12)


def test_pbw_examples():
    L = lie_of("SO_even", {"n": 2})
    assert list(pbw_series(L, 20)) == LOOP_SERIES["SO_even(n=2)"][3]
    abelian = LieAlgebraData((GradedGenerator("a", 1), GradedGenerator("b", 2)))
    assert list(pbw_series(abelian, 4)) == [1, 1, 1, 1, 1]


def test_graded_commutativity_in_envelope():
    U = enveloping(lie_of("SU_odd", {"n": 2}))
    c1, a1, b2 = U.gen("c1"), U.gen("a1"), U.gen("b2")
    assert not U.reduce(c1 * a1 - a1 * c1)
    assert not U.reduce(b2 * c1 - c1 * b2)
    a2 = U.gen("a2")
    assert not U.reduce(a1 * a2 + a2 * a1)
    assert U.reduce(a1 * a1)  # [a1, a1] does not vanish


def test_verify_presentation_detects_dropped_relation():
    L = lie_of("SU_odd", {"n": 2})
    U = enveloping(L)
    assert verify_presentation(U, pbw_series(L, 12)).ok
    broken = U.with_relations(U.relations[1:])
    rep = verify_presentation(broken, pbw_series(L, 12))
    assert rep.status == "mismatch" and rep.degree == 2


def test_rank_compare_detects_corrupted_relation():
    U = enveloping(lie_of("SU_odd", {"n": 2}))
    P = integral_presentation("SU_odd", {"n": 2})
    assert rank_compare(P, U, 12).ok
    rels = list(P.relations)
    rels[0] = rels[0] + P.gen(P.names[0]) * P.gen(P.names[1])
    rep = rank_compare(P.with_relations(rels), U, 12)
    assert rep.status == "mismatch"
    assert rep.degree is not None


@pytest.mark.parametrize("lam", [1, 2, 12, 24])
def test_rescaling_invariance(lam):
    L = lie_of("SU_odd", {"n": 2})
    Us = enveloping(L.scaled(lam))
    assert Us.series(14) == enveloping(L).series(14)
    assert compare_presentations(Us, catalog_space("SU_odd", {"n": 2}).expected_rational, 14).ok


def test_golden_comparison_reports_mapping_and_mismatch():
    spec = catalog_space("SO8", {})
    U = enveloping(lie_of("SO8"))
    rep = compare_presentations(U, spec.expected_rational, 16)
    assert rep.ok and "a1->a1" in rep.detail
    other = catalog_space("SU_even", {"n": 2}).expected_rational
    assert compare_presentations(U, other, 16).status == "mismatch"


def test_lie_laws_report():
    assert lie_laws(lie_of("E6T4")).ok
    bad = LieAlgebraData((GradedGenerator("p", 2), GradedGenerator("q", 2), GradedGenerator("r", 4)),
                         {(0, 1): {2: 1}})
    assert lie_laws(bad).status == "mismatch"


def test_series_report_dict():
    rep = verify_presentation(NCPresentation((GradedGenerator("a", 1),), ()), HilbertSeries((1, 1, 2)))
    d = rep.to_dict()
    assert d["status"] == "mismatch" and d["degree"] == 2 and d["actual"] == [1, 1, 1]
