"""Stated loop-homology presentations, rational and integral.

Every presentation here has the same skeleton: a few degree-one generators
with stated quadratic relations, tensored with central even generators and
optional polynomial relations among those.  Ranks of the integral rings are
computed after tensoring with the rationals (the rings are torsion free).
"""
from __future__ import annotations

from typing import Callable, Sequence

from .errors import CatalogError
from .graded import GradedGenerator
from .noncomm import INTEGRAL, RATIONAL, NCPoly, NCPresentation, commutator

CASES = ("SU_odd", "SU_even", "SO_even", "SO8", "E6T4", "A_partial")


def assemble(odd: Sequence[tuple], even: Sequence[tuple], relations: Callable | None = None,
             ring: str = RATIONAL, name: str = "", odd_rule: str = "clifford") -> NCPresentation:
    """Degree-one generators ``odd`` and central generators ``even``.

    ``odd_rule`` fixes the quadratic relations among the odd generators:
    ``"clifford"`` (all squares equal, distinct ones anticommute),
    ``"exterior"`` (squares vanish, anticommute) or ``"none"``.  ``relations``
    receives a name -> NCPoly lookup and returns any further relations.
    """
    gens = tuple(GradedGenerator(n, d) for n, d in list(odd) + list(even))
    g = {x.name: NCPoly(gens, {(i,): 1}) for i, x in enumerate(gens)}
    odd_names = [n for n, _ in odd]
    rels = []
    if odd_rule == "clifford":
        rels += [g[odd_names[0]] ** 2 - g[n] ** 2 for n in odd_names[1:]]
    elif odd_rule == "exterior":
        rels += [g[n] ** 2 for n in odd_names]
    elif odd_rule != "none":
        raise ValueError(f"unknown odd_rule {odd_rule!r}")
    if odd_rule != "none":
        for i, p in enumerate(odd_names):
            for q in odd_names[i + 1:]:
                rels.append(commutator(g[p], g[q], -1))
    even_names = [n for n, _ in even]
    for i, e in enumerate(even_names):
        for other in odd_names + even_names[i + 1:]:
            rels.append(commutator(g[e], g[other], 1))
    if relations is not None:
        rels += list(relations(g))
    return NCPresentation(gens, tuple(rels), ring, name)


def _need(params, key, low):
    try:
        v = int(params[key])
    except KeyError:
        raise CatalogError(f"missing parameter {key!r}") from None
    except (TypeError, ValueError):
        raise CatalogError(f"parameter {key!r} must be an integer") from None
    if v < low:
        raise CatalogError(f"parameter {key}={v} must be at least {low}")
    return v


def _xs(n, prefix="x"):
    return [(f"{prefix}{i}", 1) for i in range(1, n + 1)]


def _su(n, top_z, name):
    even = [(f"y{i}", 4 * i - 2) for i in range(2, n + 1)] + [(f"z{k}", 4 * k) for k in range(1, top_z + 1)]
    return assemble(_xs(n), even, ring=INTEGRAL, name=name)


def _loop_so_relations(n, g):
    """Relations among the generators of the loop homology of Spin(2n+2).

    y_i^2 + sum_{m=1}^{i} (-1)^m 2 y_{i-m} y_{i+m} for i < n, and the same
    expression with (y_n+z)(y_n-z) in place of y_n^2 for i = n.  A factor 2 is
    absorbed into ``2y_j`` (j > n) or into ``2y_n = (y_n+z) + (y_n-z)``.
    """
    plus, minus = g[f"y{n}_plus_z"], g[f"y{n}_minus_z"]
    one = NCPoly.one(plus.gens)

    def twice(j):
        if j < n:
            return 2 * g[f"y{j}"]
        if j == n:
            return plus + minus
        return g[f"two_y{j}"]

    rels = []
    for i in range(1, n + 1):
        r = g[f"y{i}"] ** 2 if i < n else plus * minus
        for m in range(1, i + 1):
            low = one if i == m else g[f"y{i - m}"]
            r = r + (-1) ** m * low * twice(i + m)
        rels.append(r)
    return rels


def _loop_so_generators(n):
    gens = [(f"y{i}", 2 * i) for i in range(1, n)]
    gens += [(f"y{n}_plus_z", 2 * n), (f"y{n}_minus_z", 2 * n)]
    gens += [(f"two_y{i}", 2 * i) for i in range(n + 1, 2 * n + 1)]
    return gens


def _so_even(n):
    if n < 2:
        raise CatalogError("SO_even integral presentation needs n >= 2 (y_1 must be a generator)")

    def rels(g):
        return [g["x1"] ** 2 - g["y1"]] + _loop_so_relations(n, g)

    return assemble(_xs(n), _loop_so_generators(n), rels, INTEGRAL, f"SO_even(n={n}) integral")


def _so8(variant="anticommutator"):
    """``variant='literal'`` keeps the sign of the mixed term as printed."""
    sign = -1 if variant == "anticommutator" else 1

    def rels(g):
        x1, x2 = g["x1"], g["x2"]
        return [x1 ** 2 - g["y1"], x1 ** 2 - x2 ** 2,
                x1 ** 2 - x1 * x2 + sign * x2 * x1] + _loop_so_relations(3, g)

    return assemble(_xs(2), _loop_so_generators(3), rels, INTEGRAL, "SO8 integral", odd_rule="none")


def _e6():
    even = [(f"y{i}", 2 * i) for i in (1, 2, 3, 4, 5, 7, 8, 11)]

    def rels(g):
        x = [g[f"x{k}"] for k in range(1, 5)]
        out = [xk ** 2 - 12 * g["y1"] for xk in x]
        out += [2 * g["y2"] - x[0] ** 4, 3 * g["y3"] - x[0] ** 2 * g["y2"]]
        return out

    p = assemble(_xs(4), even, rels, INTEGRAL, "E6T4 integral", odd_rule="none")
    # the anticommutators; squares are tied to y1 above
    g = {x.name: NCPoly(p.generators, {(i,): 1}) for i, x in enumerate(p.generators)}
    anti = [commutator(g[f"x{a}"], g[f"x{b}"], -1) for a in range(1, 5) for b in range(a + 1, 5)]
    return p.with_relations(list(p.relations) + anti)


def _a_partial(n, k):
    if k > n - 2:
        raise CatalogError(f"A_partial needs k <= n-2, got n={n}, k={k}")
    even = [(f"y{j}", 2 * j - 2) for j in range(n - k + 1, n + 1)]
    return assemble(_xs(k), even, ring=INTEGRAL, name=f"A_partial(n={n},k={k}) integral",
                    odd_rule="exterior")


def integral_presentation(case: str, params: dict | None = None, **kw) -> NCPresentation:
    params = dict(params or {}, **kw)
    if case == "SU_odd":
        n = _need(params, "n", 1)
        return _su(n, n, f"SU_odd(n={n}) integral")
    if case == "SU_even":
        n = _need(params, "n", 1)
        return _su(n, n - 1, f"SU_even(n={n}) integral")
    if case == "SO_even":
        return _so_even(_need(params, "n", 1))
    if case == "SO8":
        return _so8(params.get("variant", "anticommutator"))
    if case == "E6T4":
        return _e6()
    if case == "A_partial":
        return _a_partial(_need(params, "n", 2), _need(params, "k", 0))
    raise CatalogError(f"unknown case {case!r}; known: {', '.join(CASES)}")


__all__ = ["integral_presentation", "assemble", "CASES"]
