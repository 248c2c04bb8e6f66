"""The spaces of the catalog: cohomology inputs and stated loop-homology outputs."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .envelope import VerificationReport
from .errors import CatalogError
from .graded import (CohomPresentation, GradedGenerator, HilbertSeries, PolyRing, Polynomial,
                     free_graded_series, substitute)
from .groebner import cartan_reduce
from .integral import CASES, _need, assemble, integral_presentation
from .noncomm import NCPresentation


@dataclass
class SpaceSpec:
    name: str
    params: dict
    cohomology: CohomPresentation
    torus_rank: int
    restricted_invariants: list  # (Polynomial, invariant degree)
    expected_rational: NCPresentation
    expected_integral: NCPresentation | None
    provenance: tuple = ()
    notes: list = field(default_factory=list)

    @property
    def label(self) -> str:
        if not self.params:
            return self.name
        return self.name + "(" + ",".join(f"{k}={v}" for k, v in sorted(self.params.items())) + ")"


def power_sums(ring: PolyRing, exponents):
    xs = ring.gens_as_polys()
    return [sum((x ** e for x in xs), ring.zero()) for e in exponents]


# --- cohomology inputs --------------------------------------------------------


def _with_zeros(ring, invariants, zero_degrees):
    return list(invariants) + [(ring.zero(), d) for d in zero_degrees]


def _su_input(n, n_ext):
    ring = PolyRing.from_names([f"x{i}" for i in range(1, n + 1)])
    ps = power_sums(ring, [2 * i for i in range(1, n + 1)])
    inv = [(p, 4 * i) for i, p in enumerate(ps, 1)]
    # invariants restricting to zero give z of degree 4j+1
    return ring, _with_zeros(ring, inv, [4 * j + 2 for j in range(1, n_ext + 1)])


def _so_even_input(n):
    ring = PolyRing.from_names([f"x{i}" for i in range(1, n + 1)])
    ps = power_sums(ring, [2 * i for i in range(1, n + 1)])
    inv = [(p, 4 * i) for i, p in enumerate(ps, 1)]
    return ring, _with_zeros(ring, inv, [2 * n + 2])


def so8_restricted_invariants():
    """D4 invariants restricted along x4 = 0, x1 = x2 + x3.

    The surviving coordinates x2, x3 are renamed x1, x2.
    """
    big = PolyRing.from_names(["x1", "x2", "x3", "x4"])
    ring = PolyRing.from_names(["x1", "x2"])
    a, b = ring.gens_as_polys()
    rho = {"x1": a + b, "x2": a, "x3": b, "x4": ring.zero()}
    p2, p4, p6 = power_sums(big, [2, 4, 6])
    x1, x2, x3, x4 = big.gens_as_polys()
    pf = x1 * x2 * x3 * x4
    out = [(substitute(p, rho, target=ring), d) for p, d in ((p2, 4), (p4, 8), (p6, 12), (pf, 8))]
    return ring, out


def so8_cohomology() -> CohomPresentation:
    ring = PolyRing.from_names(["x1", "x2"])
    x1, x2 = ring.gens_as_polys()
    rels = (x1 ** 2 + x2 ** 2 + x1 * x2, (x1 + x2) ** 2 * x1 ** 2 * x2 ** 2)
    return CohomPresentation(ring, rels, (GradedGenerator("z1", 7), GradedGenerator("z2", 7)))


E6_DEGREES = (2, 5, 6, 8, 9, 12)


def e6_invariant(k: int, big: PolyRing) -> Polynomial:
    """sum_i [(x_i+eps)^k + (x_i-eps)^k] + sum_{i<j} (-x_i-x_j)^k over six coordinates."""
    xs = big.gens_as_polys()[:6]
    eps = big.gen("eps")
    p = big.zero()
    for x in xs:
        p = p + (x + eps) ** k + (x - eps) ** k
    for x, y in combinations(xs, 2):
        p = p + (-x - y) ** k
    return p


def e6_restricted_invariants():
    big = PolyRing.from_names([f"x{i}" for i in range(1, 7)] + ["eps"])
    ring = PolyRing.from_names(["x1", "x2", "x3", "eps"])
    x1, x2, x3, eps = ring.gens_as_polys()
    rho = {"x1": x1, "x2": x2, "x3": x3, "x4": -x3, "x5": -x2, "x6": -x1, "eps": eps}
    return ring, [(substitute(e6_invariant(k, big), rho, target=ring), 2 * k) for k in E6_DEGREES]


def _a_partial_input(n, k):
    ring = PolyRing.from_names([f"x{i}" for i in range(1, k + 1)])
    js = list(range(n - k + 1, n + 1))
    if k == 0:
        return ring, []
    return ring, [(p, 2 * j) for j, p in zip(js, power_sums(ring, js))]


# --- stated rational loop homology -------------------------------------------------


def _a(n):
    return [(f"a{i}", 1) for i in range(1, n + 1)]


def _rational_su(n, top_c):
    even = [(f"b{j}", 4 * j - 2) for j in range(2, n + 1)] + [(f"c{k}", 4 * k) for k in range(1, top_c + 1)]
    return even


def expected_loop_homology(name: str, params: dict | None = None, ring: str = "rational",
                           **kw) -> NCPresentation:
    params = dict(params or {}, **kw)
    if ring == "integral":
        return integral_presentation(name, params)
    if ring != "rational":
        raise CatalogError(f"unknown ring {ring!r}")
    label = f"{name} rational"
    if name == "SU_odd":
        n = _need(params, "n", 1)
        return assemble(_a(n), _rational_su(n, n), name=label)
    if name == "SU_even":
        n = _need(params, "n", 1)
        return assemble(_a(n), _rational_su(n, n - 1), name=label)
    if name == "SO_even":
        n = _need(params, "n", 1)
        even = [(f"b{k}", 4 * k - 2) for k in range(2, n + 1)] + [(f"b{n + 1}", 2 * n)]
        return assemble(_a(n), even, name=label)
    if name == "SO8":
        def rels(g):
            a1, a2 = g["a1"], g["a2"]
            return [a1 ** 2 - a2 ** 2, a1 ** 2 - a1 * a2 - a2 * a1]
        return assemble(_a(2), [("b2", 10), ("c1", 6), ("c2", 6)], rels, name=label, odd_rule="none")
    if name == "E6T4":
        return assemble(_a(4), [(f"b{j}", 2 * j) for j in (4, 5, 7, 8, 11)], name=label)
    if name == "A_partial":
        n, k = _need(params, "n", 2), _need(params, "k", 0)
        _check_partial(n, k)
        even = [(f"b{j}", 2 * j - 2) for j in range(n - k + 1, n + 1)]
        return assemble(_a(k), even, name=label, odd_rule="exterior")
    raise CatalogError(f"unknown case {name!r}; known: {', '.join(CASES)}")


def _check_partial(n, k):
    if k > n - 2:
        raise CatalogError(f"A_partial is defined for k <= n-2, got n={n}, k={k}")


# --- assembly -------------------------------------------------------------------


def _ext(n_ext_degrees):
    return [f"z{i}" for i in range(1, len(n_ext_degrees) + 1)]


def catalog_space(name: str, params: dict | None = None, **kw) -> SpaceSpec:
    params = dict(params or {}, **kw)
    notes = []
    if name == "SU_odd":
        n = _need(params, "n", 1)
        params = {"n": n}
        ring, inv = _su_input(n, n)
        torus, prov = n, ("rational loop homology of SU(2n+1)/T^n", "integral loop homology of SU(2n+1)/T^n")
    elif name == "SU_even":
        n = _need(params, "n", 1)
        params = {"n": n}
        ring, inv = _su_input(n, n - 1)
        torus, prov = n, ("rational loop homology of SU(2n)/T^n", "integral loop homology of SU(2n)/T^n")
        if n == 1:
            notes.append("degenerate: no polynomial factor")
    elif name == "SO_even":
        n = _need(params, "n", 1)
        params = {"n": n}
        ring, inv = _so_even_input(n)
        torus, prov = n, ("rational loop homology of SO(2n+2)/T^n", "integral loop homology of SO(2n+2)/T^n")
        if n == 1:
            notes.append("degenerate: b_2..b_n empty; no integral presentation (y_1 is not a generator)")
    elif name == "SO8":
        params = {}
        ring, inv = so8_restricted_invariants()
        torus, prov = 2, ("rational loop homology of SO(8)/T^2", "integral loop homology of SO(8)/T^2")
    elif name == "E6T4":
        params = {}
        ring, inv = e6_restricted_invariants()
        torus, prov = 4, ("rational loop homology of E6/T^4", "integral loop homology of E6/T^4")
    elif name == "A_partial":
        n, k = _need(params, "n", 2), _need(params, "k", 0)
        _check_partial(n, k)
        params = {"n": n, "k": k}
        ring, inv = _a_partial_input(n, k)
        torus = k
        prov = ("rational loop homology of U(n)/(T^k x U(n-k))", "integral loop homology of U(n)/(T^k x U(n-k))")
    else:
        raise CatalogError(f"unknown case {name!r}; known: {', '.join(CASES)}")

    if name == "SO8":
        cohomology = so8_cohomology()
    else:
        red = cartan_reduce(inv, ring)
        cohomology = red.presentation(_ext(red.exterior_degrees))
    try:
        integral = integral_presentation(name, params)
    except CatalogError as exc:
        integral = None
        notes.append(str(exc))
    return SpaceSpec(name, params, cohomology, torus, inv,
                     expected_loop_homology(name, params), integral, prov, notes)


def default_cases():
    """The small-parameter cases exercised by verification runs."""
    return [
        ("SU_odd", {"n": 1}), ("SU_odd", {"n": 2}), ("SU_odd", {"n": 3}),
        ("SU_even", {"n": 2}), ("SU_even", {"n": 3}),
        ("SO_even", {"n": 2}), ("SO_even", {"n": 3}),
        ("SO8", {}), ("E6T4", {}),
        ("A_partial", {"n": 4, "k": 2}),
    ]


def list_cases():
    return [
        ("SU_odd", "n>=1", "SU(2n+1)/T^n"),
        ("SU_even", "n>=1", "SU(2n)/T^n"),
        ("SO_even", "n>=1", "SO(2n+2)/T^n"),
        ("SO8", "", "SO(8)/T^2"),
        ("E6T4", "", "E6/T^4"),
        ("A_partial", "n, k<=n-2", "U(n)/(T^k x U(n-k))"),
    ]


def one_plus_t_power(k: int, N: int) -> HilbertSeries:
    return free_graded_series([1] * k, N)


def splitting_series_check(name: str, params: dict | None = None, N: int = 20,
                           series: HilbertSeries | None = None, **kw) -> VerificationReport:
    """Loop homology series against (1+t)^k times the torus-free factor.

    ``series`` defaults to the stated rational answer; pass the pipeline's
    computed series to check that instead.
    """
    params = dict(params or {}, **kw)
    check = "torus splitting"
    if name != "A_partial":
        return VerificationReport(check, "skipped", bound=N,
                                  detail=f"no torus-factor decomposition recorded for {name}")
    n, k = _need(params, "n", 2), _need(params, "k", 0)
    _check_partial(n, k)
    if series is None:
        series = expected_loop_homology(name, params).series(N)
    factor = free_graded_series([2 * j for j in range(n - k, n)], N)
    expected = one_plus_t_power(k, N) * factor
    bad = series.first_mismatch(expected)
    return VerificationReport(check, "match" if bad is None else "mismatch", bad, N,
                              list(series), list(expected),
                              f"(1+t)^{k} x polynomial on degrees {[2 * j for j in range(n - k, n)]}")


__all__ = [
    "SpaceSpec", "catalog_space", "expected_loop_homology", "splitting_series_check",
    "list_cases", "default_cases", "power_sums", "e6_invariant", "e6_restricted_invariants",
    "so8_restricted_invariants", "so8_cohomology",
]
