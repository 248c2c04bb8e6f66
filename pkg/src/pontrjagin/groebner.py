"""Commutative Groebner bases, ideal membership and Cartan-pair reduction.

All arithmetic is exact.  The monomial order is graded reverse lexicographic
with the topological degree as grading and ``x1 > x2 > ... `` in declaration
order.  Internally polynomials are plain ``{exponent_tuple: Fraction}`` dicts;
the public surface speaks :class:`~pontrjagin.graded.Polynomial`.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import ContextError, GradingError, NotCartanPairError
from .graded import (
    CohomPresentation,
    GradedGenerator,
    HilbertSeries,
    PolyRing,
    Polynomial,
    complete_intersection_series,
    monomial_count_series,
    substitute,
)

log = logging.getLogger(__name__)

GREVLEX = "grevlex"


class _Order:
    """Weighted grevlex comparison key with a per-ring cache."""

    def __init__(self, ring: PolyRing):
        self.degrees = ring.degrees
        self._cache = {}

    def key(self, m):
        k = self._cache.get(m)
        if k is None:
            deg = 0
            for e, w in zip(m, self.degrees):
                deg += e * w
            k = (deg, tuple(-e for e in reversed(m)))
            self._cache[m] = k
        return k

    def lead(self, p: dict):
        return max(p, key=self.key)


def _divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _sub_mon(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _add_mon(a, b):
    return tuple(x + y for x, y in zip(a, b))


class _Basis:
    """Mutable working set of monic polynomials with cached leading monomials."""

    def __init__(self, order: _Order):
        self.order = order
        self.polys = []  # list of dicts, monic
        self.leads = []

    def add(self, p: dict):
        lm = self.order.lead(p)
        c = p[lm]
        if c != 1:
            inv = 1 / c
            p = {m: v * inv for m, v in p.items()}
        self.polys.append(p)
        self.leads.append(lm)
        return len(self.polys) - 1

    def find_reducer(self, m, active=None):
        idx = range(len(self.polys)) if active is None else active
        for i in idx:
            if _divides(self.leads[i], m):
                return i
        return None

    def normal_form(self, p: dict, active=None, full=True) -> dict:
        """Reduce ``p``; with ``full`` every term is reduced, not only the head."""
        p = dict(p)
        rem = {}
        key = self.order.key
        while p:
            lm = max(p, key=key)
            c = p[lm]
            i = self.find_reducer(lm, active)
            if i is None:
                if not full:
                    rem.update(p)
                    return rem
                rem[lm] = c
                del p[lm]
                continue
            g = self.polys[i]
            shift = _sub_mon(lm, self.leads[i])
            for m, v in g.items():
                mm = _add_mon(m, shift)
                s = p.get(mm, 0) - c * v
                if s:
                    p[mm] = s
                else:
                    p.pop(mm, None)
        return rem


def _spoly(f, lf, g, lg):
    l = _lcm(lf, lg)
    sf = _sub_mon(l, lf)
    sg = _sub_mon(l, lg)
    out = {}
    for m, v in f.items():
        out[_add_mon(m, sf)] = v
    for m, v in g.items():
        mm = _add_mon(m, sg)
        s = out.get(mm, 0) - v
        if s:
            out[mm] = s
        else:
            out.pop(mm, None)
    return out


def _buchberger(ring: PolyRing, gens: list, degree_bound=None):
    """Return (polys, leads) of a reduced Groebner basis, truncated if asked."""
    order = _Order(ring)
    B = _Basis(order)
    weight = order.key
    pending = [g for g in gens if g]
    pending.sort(key=lambda p: weight(order.lead(p)))
    pairs = set()

    def lcm_deg(i, j):
        return weight(_lcm(B.leads[i], B.leads[j]))[0]

    def insert(p):
        k = B.add(p)
        for i in range(k):
            pairs.add((i, k))
        return k

    for g in pending:
        nf = B.normal_form(g)
        if nf:
            insert(nf)

    while pairs:
        # normal strategy: smallest lcm degree first, ties by index for determinism
        i, j = min(pairs, key=lambda ij: (lcm_deg(*ij), ij))
        pairs.discard((i, j))
        li, lj = B.leads[i], B.leads[j]
        l = _lcm(li, lj)
        if degree_bound is not None and weight(l)[0] > degree_bound:
            continue
        # product criterion
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        # chain criterion
        skip = False
        for k in range(len(B.polys)):
            if k in (i, j):
                continue
            if _divides(B.leads[k], l):
                pik = (min(i, k), max(i, k))
                pjk = (min(j, k), max(j, k))
                if pik not in pairs and pjk not in pairs:
                    skip = True
                    break
        if skip:
            continue
        s = _spoly(B.polys[i], li, B.polys[j], lj)
        nf = B.normal_form(s)
        if nf:
            insert(nf)

    # minimalize and inter-reduce
    alive = list(range(len(B.polys)))
    minimal = []
    for k in alive:
        lk = B.leads[k]
        redundant = False
        for m in alive:
            if m == k:
                continue
            lm = B.leads[m]
            if _divides(lm, lk) and (lm != lk or m < k):
                redundant = True
                break
        if not redundant:
            minimal.append(k)
    reduced = _Basis(order)
    for k in minimal:
        reduced.polys.append(B.polys[k])
        reduced.leads.append(B.leads[k])
    out_polys = []
    for idx in range(len(reduced.polys)):
        others = [t for t in range(len(reduced.polys)) if t != idx]
        p = reduced.polys[idx]
        lm = reduced.leads[idx]
        tail = {m: v for m, v in p.items() if m != lm}
        tail = reduced.normal_form(tail, active=others)
        tail[lm] = Fraction(1)
        out_polys.append(tail)
    pairs_sorted = sorted(zip(out_polys, reduced.leads), key=lambda t: weight(t[1]))
    return [p for p, _ in pairs_sorted], [l for _, l in pairs_sorted], order


@dataclass
class IdealBasis:
    """Generators of an ideal plus (optionally) its reduced Groebner basis."""

    ring: PolyRing
    generators: tuple
    order: str = GREVLEX
    groebner: tuple | None = None
    degree_bound: int | None = None
    _leads: tuple = field(default=(), repr=False)
    _order: object = field(default=None, repr=False)

    def _working(self) -> _Basis:
        if self.groebner is None:
            raise ValueError("Groebner basis has not been computed")
        B = _Basis(self._order)
        B.polys = [dict(g.terms) for g in self.groebner]
        B.leads = list(self._leads)
        return B

    def reduce(self, p: Polynomial) -> Polynomial:
        if p.ring != self.ring:
            raise ContextError(f"polynomial over {p.ring!r} reduced against ideal over {self.ring!r}")
        if self.degree_bound is not None and p.terms and max(p.degrees) > self.degree_bound:
            raise GradingError(
                f"basis is only complete up to degree {self.degree_bound}; got degree {max(p.degrees)}"
            )
        return Polynomial(self.ring, self._working().normal_form(p.terms))

    def leading_monomials(self):
        return tuple(self._leads)

    def is_standard(self, m) -> bool:
        return not any(_divides(l, m) for l in self._leads)

    def quotient_series(self, N: int) -> HilbertSeries:
        """Count standard monomials per degree (exact only up to ``degree_bound``)."""
        if self.degree_bound is not None and N > self.degree_bound:
            raise GradingError(f"basis truncated at {self.degree_bound} < {N}")
        return monomial_count_series(self.ring, N, self.is_standard)


def groebner_basis(gens: Sequence[Polynomial], order: str = GREVLEX, ring: PolyRing | None = None,
                   degree_bound: int | None = None) -> IdealBasis:
    if order != GREVLEX:
        raise ValueError(f"unsupported monomial order {order!r}")
    gens = tuple(gens)
    if ring is None:
        if not gens:
            raise ContextError("empty generator list needs an explicit ring")
        ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise ContextError("generators live in different rings")
    raw = [dict(g.terms) for g in gens if not g.is_zero]
    polys, leads, ordobj = _buchberger(ring, raw, degree_bound)
    basis = tuple(Polynomial(ring, p) for p in polys)
    return IdealBasis(ring, gens, order, basis, degree_bound, tuple(leads), ordobj)


def is_member(p: Polynomial, ideal: IdealBasis) -> bool:
    if p.is_zero:
        return True
    return ideal.reduce(p).is_zero


def default_bound(ring: PolyRing, seq: Sequence[Polynomial]) -> int:
    return sum(q.degree for q in seq) + (max(ring.degrees) if ring.degrees else 0)


def is_regular_sequence(seq: Sequence[Polynomial], ambient=None, N: int | None = None) -> bool:
    """Hilbert-series criterion for a homogeneous regular sequence.

    ``ambient`` is a :class:`PolyRing` or a list of generators; defaults to the
    ring of the first element.
    """
    seq = list(seq)
    if ambient is None:
        if not seq:
            return True
        ring = seq[0].ring
    elif isinstance(ambient, PolyRing):
        ring = ambient
    else:
        ring = PolyRing(list(ambient))
    for q in seq:
        if q.ring != ring:
            raise ContextError("sequence element lives in a different ring")
        if not q.is_homogeneous():
            raise GradingError(f"{q} is not homogeneous")
        if q.is_zero:
            return False
    if N is None:
        N = default_bound(ring, seq)
    ideal = groebner_basis(seq, ring=ring, degree_bound=N)
    actual = ideal.quotient_series(N)
    expected_coeffs = _ci_coefficients(ring.degrees, [q.degree for q in seq], N)
    return list(actual.coefficients) == expected_coeffs


def _ci_coefficients(var_degrees, rel_degrees, N):
    from .graded import _series_product

    return _series_product(N, divide=var_degrees, multiply_minus=rel_degrees)


# ---------------------------------------------------------------------------
# Cartan-pair reduction


@dataclass(frozen=True)
class CartanReduction:
    ring: PolyRing
    regular: tuple  # (input index, Polynomial)
    exterior_degrees: tuple
    eliminated_linear: tuple = ()
    exterior_sources: tuple = ()  # input index per exterior degree
    bound: int | None = None

    def presentation(self, exterior_names: Sequence[str] | None = None) -> CohomPresentation:
        n = len(self.exterior_degrees)
        names = list(exterior_names) if exterior_names else [f"z{i + 1}" for i in range(n)]
        ext = [GradedGenerator(nm, d) for nm, d in zip(names, self.exterior_degrees)]
        return CohomPresentation(self.ring, tuple(p for _, p in self.regular), tuple(ext))


def _linear_variable(p: Polynomial):
    """Index of the last generator occurring linearly in ``p`` (None if none)."""
    best = None
    for m, c in p.terms.items():
        if sum(m) == 1:
            i = m.index(1)
            if best is None or i > best:
                best = i
    return best


def cartan_reduce(restricted: Sequence, ambient: PolyRing | None = None) -> CartanReduction:
    """Split restricted invariants into a regular sequence plus exterior generators.

    ``restricted`` is a sequence of ``(polynomial, invariant_degree)`` pairs.  The
    polynomial may be zero.  Invariants are scanned by ascending degree, ties in
    input order.
    """
    items = list(enumerate(restricted))
    if ambient is None:
        ambient = next((p.ring for _, (p, _d) in items), None)
        if ambient is None:
            raise ContextError("no invariants and no ambient ring")
    for idx, (p, d) in items:
        if p.ring != ambient:
            raise ContextError(f"invariant {idx} lives in a different ring")
        if not p.is_homogeneous():
            raise GradingError(f"restricted invariant {idx} is not homogeneous")
        if not p.is_zero and p.degree != d:
            raise GradingError(f"invariant {idx} has degree {p.degree}, declared {d}")
        if d % 2:
            raise GradingError(f"invariant degree {d} must be even")
    items.sort(key=lambda t: (t[1][1], t[0]))

    ring = ambient
    # image of every ambient generator in the current (possibly smaller) ring
    images = {n: ring.gen(n) for n in ring.names}
    eliminated = []
    accepted = []  # (input index, polynomial in current ring)
    exterior = []
    sources = []
    ideal = None
    for idx, (p, d) in items:
        if eliminated and not p.is_zero:
            p = substitute(p, images, target=ring)
        if p.is_zero:
            exterior.append(d - 1)
            sources.append(idx)
            continue
        lin = _linear_variable(p)
        if lin is not None:
            var = ring.names[lin]
            unit = tuple(1 if k == lin else 0 for k in range(len(ring)))
            coeff = p.coefficient(unit)
            new_ring = PolyRing([g for g in ring.gens if g.name != var])
            step = {n: new_ring.gen(n) for n in new_ring.names}
            step[var] = substitute(-(p - coeff * ring.gen(var)) / coeff, step, target=new_ring)
            log.debug("eliminating %s = %s", var, step[var])
            images = {n: substitute(q, step, target=new_ring) for n, q in images.items()}
            accepted = [(i, substitute(q, step, target=new_ring)) for i, q in accepted]
            eliminated.append(var)
            ring = new_ring
            ideal = groebner_basis([q for _, q in accepted], ring=ring) if accepted else None
            continue
        if ideal is not None and is_member(p, ideal):
            exterior.append(d - 1)
            sources.append(idx)
            continue
        accepted.append((idx, p))
        ideal = groebner_basis([q for _, q in accepted], ring=ring)

    regular = tuple(accepted)
    bound = default_bound(ring, [q for _, q in regular])
    if regular and not is_regular_sequence([q for _, q in regular], ring, N=bound):
        raise NotCartanPairError(
            "accepted invariants of degrees "
            f"{[q.degree for _, q in regular]} do not form a regular sequence"
        )
    return CartanReduction(ring, regular, tuple(exterior), tuple(eliminated), tuple(sources), bound)


def presentation_from_cartan(red: CartanReduction, exterior_names=None) -> CohomPresentation:
    return red.presentation(exterior_names)


def expected_ci_series(pres: CohomPresentation, N: int) -> HilbertSeries:
    return complete_intersection_series(pres.ring.degrees, pres.relation_degrees(),
                                        [z.degree for z in pres.exterior], N)
