import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pontrjagin.catalog import catalog_space
from pontrjagin.errors import ArityError, GradingError, InvalidLieAlgebraError, ReductionError
from pontrjagin.graded import CohomPresentation, GradedGenerator, PolyRing
from pontrjagin.sullivan import (LieAlgebraData, ModelFragment, build_formal_model, homotopy_lie,
                                 pairing_eval, quadratic_part)


def lie_of(name, params=None):
    return homotopy_lie(build_formal_model(catalog_space(name, params or {}).cohomology))


def brackets_by_name(L):
    return {(x, y): {z: c for z, c in v.items()} for x, y, v in L.nonzero_brackets()}


def test_model_generators_and_degrees():
    m = build_formal_model(catalog_space("SU_odd", {"n": 2}).cohomology)
    assert [g.degree for g in m.u] == [2, 2]
    assert [g.degree for g in m.v] == [3, 7]
    assert [g.degree for g in m.z] == [5, 9]
    assert str(m.d("v1")) == "x1^2 + x2^2"
    assert m.d("x1").is_zero and m.d("z1").is_zero
    with pytest.raises(KeyError):
        m.d("nope")


def test_model_rejects_linear_relation():
    R = PolyRing([GradedGenerator("x", 2), GradedGenerator("y", 4)])
    x, y = R.gens_as_polys()
    with pytest.raises(ReductionError):
        build_formal_model(CohomPresentation(R, (x ** 2 + y,)))


def test_model_degree_check():
    R = PolyRing.from_names(["x"])
    x = R.gen("x")
    with pytest.raises(GradingError):
        ModelFragment(R, (GradedGenerator("v", 5),), (), {"v": x ** 2})


def test_quadratic_part_keeps_only_word_length_two():
    q = quadratic_part(build_formal_model(catalog_space("SO8", {}).cohomology))
    assert str(q["v1"]) == "x1^2 + x1*x2 + x2^2"
    assert q["v2"].is_zero


def test_pairing_examples():
    R = PolyRing.from_names(["x1", "x2"])
    x1, x2 = R.gens_as_polys()
    g1, g2 = R.gens
    assert pairing_eval(x1 ** 2, [g1, g1]) == 2
    assert pairing_eval(x1 * x2, [g1, g2]) == 1
    assert pairing_eval(x1 * x2, [g1, g1]) == 0
    odd = GradedGenerator("z", 3)
    assert pairing_eval([odd, odd], [odd, odd]) == 0
    assert pairing_eval([odd], [odd]) == -1
    with pytest.raises(ArityError):
        pairing_eval(x1 ** 2, [g1])


def test_brackets_su():
    L = lie_of("SU_odd", {"n": 2})
    assert brackets_by_name(L) == {("a1", "a1"): {"b1": 2}, ("a2", "a2"): {"b1": 2}}
    assert [b.degree for b in L.basis] == [1, 1, 2, 6, 4, 8]


def test_brackets_so8():
    L = lie_of("SO8")
    assert brackets_by_name(L) == {("a1", "a1"): {"b1": 2}, ("a1", "a2"): {"b1": 1},
                                   ("a2", "a2"): {"b1": 2}}
    # odd elements: [a2, a1] = [a1, a2]
    assert L.basis_bracket(1, 0) == {2: 1}


def test_brackets_e6():
    L = lie_of("E6T4")
    assert brackets_by_name(L) == {(f"a{i}", f"a{i}"): {"b1": 24} for i in range(1, 5)}


def test_abelian_when_no_quadratic_part():
    assert lie_of("A_partial", {"n": 4, "k": 2}).is_abelian()


@pytest.mark.parametrize("name,params", [("SU_odd", {"n": 3}), ("SU_even", {"n": 3}), ("SO_even", {"n": 3}),
                                         ("SO8", {}), ("E6T4", {})])
def test_lie_laws_hold(name, params):
    L = lie_of(name, params)
    L.validate()
    assert not L.jacobi_violations() and not L.antisymmetry_violations() and not L.degree_violations()


def test_invalid_lie_algebra_detected():
    basis = (GradedGenerator("a", 1), GradedGenerator("b", 2))
    with pytest.raises(InvalidLieAlgebraError):
        LieAlgebraData(basis, {(0, 0): {0: 1}}).validate()  # degree fails
    even = (GradedGenerator("p", 2), GradedGenerator("q", 2), GradedGenerator("r", 4))
    with pytest.raises(InvalidLieAlgebraError):
        LieAlgebraData(even, {(0, 1): {2: 1}}).validate()  # missing [q, p]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_bracket_bilinear(seed):
    rng = random.Random(seed)
    L = lie_of("SO8")
    n = len(L.basis)

    def vec():
        return {i: Fraction(rng.randint(-3, 3)) for i in range(2)}

    x, y, z = vec(), vec(), vec()
    lam = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    xz = {i: x.get(i, 0) + lam * z.get(i, 0) for i in range(n)}
    lhs = L.bracket(xz, y)
    a, b = L.bracket(x, y), L.bracket(z, y)
    rhs = {m: a.get(m, 0) + lam * b.get(m, 0) for m in set(a) | set(b)}
    assert lhs == {m: c for m, c in rhs.items() if c}


@pytest.mark.parametrize("lam", [1, 2, Fraction(1, 3), 12, -5])
def test_scaling_the_differential_scales_brackets(lam):
    pres = catalog_space("SU_odd", {"n": 2}).cohomology
    scaled = CohomPresentation(pres.ring, tuple(lam * r for r in pres.relations), pres.exterior)
    L = homotopy_lie(build_formal_model(pres))
    Ls = homotopy_lie(build_formal_model(scaled))
    assert Ls.brackets == L.scaled(lam).brackets
