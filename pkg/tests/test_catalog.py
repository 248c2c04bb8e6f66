import pytest

from oracles import LOOP_SERIES
from pontrjagin.catalog import (catalog_space, default_cases, e6_restricted_invariants, expected_loop_homology,
                                list_cases, so8_cohomology, splitting_series_check)
from pontrjagin.errors import CatalogError
from pontrjagin.groebner import cartan_reduce, groebner_basis, is_member


def test_default_cases_and_labels():
    labels = [catalog_space(n, p).label for n, p in default_cases()]
    assert labels == list(LOOP_SERIES)
    assert [r[0] for r in list_cases()] == ["SU_odd", "SU_even", "SO_even", "SO8", "E6T4", "A_partial"]


@pytest.mark.parametrize("name,params", default_cases())
def test_expected_rational_series(name, params):
    spec = catalog_space(name, params)
    assert list(spec.expected_rational.series(20)) == LOOP_SERIES[spec.label][3]


def test_su_cohomology_shape():
    pres = catalog_space("SU_odd", {"n": 2}).cohomology
    assert pres.relation_degrees() == [4, 8]
    assert [z.degree for z in pres.exterior] == [5, 9]
    assert [z.degree for z in catalog_space("SU_even", {"n": 3}).cohomology.exterior] == [5, 9]


def test_so8_stated_cohomology_matches_reduction():
    spec = catalog_space("SO8", {})
    red = cartan_reduce(spec.restricted_invariants)
    stated = so8_cohomology()
    a = groebner_basis([q for _, q in red.regular])
    b = groebner_basis(stated.relations)
    assert all(is_member(r, a) for r in stated.relations)
    assert all(is_member(q, b) for _, q in red.regular)
    assert [z.degree for z in stated.exterior] == [7, 7]


def test_e6_restricted_invariants():
    ring, inv = e6_restricted_invariants()
    assert ring.names == ("x1", "x2", "x3", "eps")
    assert [d for _, d in inv] == [4, 10, 12, 16, 18, 24]
    red = cartan_reduce(inv, ring)
    assert [q.degree for _, q in red.regular] == [4, 12, 16, 24]
    assert red.exterior_degrees == (9, 17)


def test_degenerate_cases_flagged():
    assert any("degenerate" in n for n in catalog_space("SU_even", {"n": 1}).notes)
    spec = catalog_space("SO_even", {"n": 1})
    assert spec.expected_integral is None and spec.notes


def test_catalog_errors():
    with pytest.raises(CatalogError):
        catalog_space("G2")
    with pytest.raises(CatalogError):
        catalog_space("SU_odd", {"n": 0})
    with pytest.raises(CatalogError):
        catalog_space("A_partial", {"n": 4, "k": 3})
    with pytest.raises(CatalogError):
        expected_loop_homology("SU_odd", {"n": 1}, ring="padic")


def test_splitting_check():
    assert splitting_series_check("A_partial", {"n": 4, "k": 2}).ok
    assert splitting_series_check("A_partial", {"n": 5, "k": 3}).ok
    assert splitting_series_check("SO8").status == "skipped"
    wrong = catalog_space("A_partial", {"n": 4, "k": 1}).expected_rational.series(20)
    assert splitting_series_check("A_partial", {"n": 4, "k": 2}, series=wrong).status == "mismatch"
