"""Graded noncommutative presentations and degree-bounded rewriting.

Words are tuples of generator indices.  Words are ordered by topological
degree, then length, then lexicographically by generator declaration order;
the largest word of a relation is its leading word and rewrites to the rest.
Relations are homogeneous, so completion proceeds one degree at a time and a
system completed to degree N is an exact rewriting system for every word of
degree at most N.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import ContextError, GradingError, OrientationError
from .graded import GradedGenerator, HilbertSeries, check_unique_names

log = logging.getLogger(__name__)

RATIONAL = "rational"
INTEGRAL = "integral"


class NCPoly:
    """A noncommutative polynomial over named graded generators."""

    __slots__ = ("gens", "terms")

    def __init__(self, gens: Sequence[GradedGenerator], terms: Mapping[tuple, Fraction] = ()):
        self.gens = tuple(gens)
        self.terms = {}
        for w, c in dict(terms).items():
            c = Fraction(c)
            if c:
                self.terms[tuple(w)] = self.terms.get(tuple(w), 0) + c
        self.terms = {w: c for w, c in self.terms.items() if c}

    @classmethod
    def word(cls, gens, *names, coeff=1):
        index = {g.name: i for i, g in enumerate(gens)}
        try:
            w = tuple(index[n] for n in names)
        except KeyError as exc:
            raise ContextError(f"unknown generator {exc.args[0]!r}") from None
        return cls(gens, {w: coeff})

    @classmethod
    def one(cls, gens):
        return cls(gens, {(): 1})

    def _check(self, other):
        if self.gens != other.gens:
            raise ContextError("noncommutative polynomials over different generators")

    def __add__(self, other):
        if not isinstance(other, NCPoly):
            other = NCPoly(self.gens, {(): other})
        self._check(other)
        t = dict(self.terms)
        for w, c in other.terms.items():
            t[w] = t.get(w, 0) + c
        return NCPoly(self.gens, t)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly(self.gens, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, NCPoly):
            c = Fraction(other)
            return NCPoly(self.gens, {w: v * c for w, v in self.terms.items()})
        self._check(other)
        t = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                t[w] = t.get(w, 0) + c1 * c2
        return NCPoly(self.gens, t)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n: int):
        out = NCPoly.one(self.gens)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, NCPoly) and self.gens == other.gens and self.terms == other.terms

    def __hash__(self):
        return hash((self.gens, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def word_degree(self, w) -> int:
        return sum(self.gens[i].degree for i in w)

    @property
    def degrees(self) -> frozenset:
        return frozenset(self.word_degree(w) for w in self.terms)

    def is_homogeneous(self) -> bool:
        return len(self.degrees) <= 1

    @property
    def degree(self) -> int:
        if not self.terms:
            return -1
        if len(self.degrees) != 1:
            raise GradingError(f"{self} is not homogeneous")
        return next(iter(self.degrees))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def substitute(self, images: Mapping[int, "NCPoly"], new_gens: Sequence[GradedGenerator]) -> "NCPoly":
        """Replace generator ``i`` by ``images[i]``; others map to same-named generators."""
        new_gens = tuple(new_gens)
        index = {g.name: i for i, g in enumerate(new_gens)}
        letter = dict(images)
        out = NCPoly(new_gens)
        for w, c in self.terms.items():
            term = NCPoly(new_gens, {(): c})
            for i in w:
                if i not in letter:
                    name = self.gens[i].name
                    if name not in index:
                        raise ContextError(f"generator {name!r} has no image")
                    letter[i] = NCPoly(new_gens, {(index[name],): 1})
                term = term * letter[i]
            out = out + term
        return out

    def sorted_terms(self):
        key = word_key_factory(self.gens)
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def __str__(self):
        return format_terms(self.gens, self.sorted_terms())

    def __repr__(self):
        return f"NCPoly({self})"


def format_word(gens, w) -> str:
    return "*".join(gens[i].name for i in w) if w else "1"


def format_terms(gens, items) -> str:
    if not items:
        return "0"
    out = ""
    for k, (w, c) in enumerate(items):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not w:
            body = str(a)
        elif a == 1:
            body = format_word(gens, w)
        else:
            body = f"{a}*{format_word(gens, w)}"
        if k == 0:
            out = ("-" if sign == "-" else "") + body
        else:
            out += f" {sign} {body}"
    return out


def word_key_factory(gens):
    degs = [g.degree for g in gens]

    def key(w):
        return (sum(degs[i] for i in w), len(w), w)

    return key


# ---------------------------------------------------------------------------
# rewriting


class RewriteSystem:
    """Rules ``leading word -> tail`` completed for all words of degree <= bound."""

    def __init__(self, gens: Sequence[GradedGenerator], bound: int):
        self.gens = tuple(gens)
        self.degs = tuple(g.degree for g in self.gens)
        self.bound = bound
        self.rules = {}  # leading word -> tail dict
        self.lengths = set()
        self._memo = {}
        self._key = word_key_factory(self.gens)

    def word_degree(self, w):
        degs = self.degs
        return sum(degs[i] for i in w)

    def add_rule(self, lead, tail: dict):
        key = self._key
        k = key(lead)
        for w in tail:
            if key(w) >= k:
                raise OrientationError(
                    f"rule {format_word(self.gens, lead)} -> ... has tail word "
                    f"{format_word(self.gens, w)} that is not smaller"
                )
        self.rules[lead] = tail
        self.lengths.add(len(lead))

    def _find(self, w):
        """First (position, length) where a leading word occurs in ``w``."""
        rules = self.rules
        n = len(w)
        for i in range(n):
            for L in self.lengths:
                if i + L <= n and w[i:i + L] in rules:
                    return i, L
        return None

    def normal_form_word(self, w) -> dict:
        memo = self._memo
        hit = memo.get(w)
        if hit is not None:
            return hit
        found = self._find(w)
        if found is None:
            result = {w: Fraction(1)}
        else:
            i, L = found
            pre, post = w[:i], w[i + L:]
            result = {}
            for t, c in self.rules[w[i:i + L]].items():
                for u, d in self.normal_form_word(pre + t + post).items():
                    s = result.get(u, 0) + c * d
                    if s:
                        result[u] = s
                    else:
                        result.pop(u, None)
        memo[w] = result
        return result

    def reduce(self, terms: Mapping[tuple, Fraction]) -> dict:
        out = {}
        for w, c in terms.items():
            for u, d in self.normal_form_word(w).items():
                s = out.get(u, 0) + c * d
                if s:
                    out[u] = s
                else:
                    out.pop(u, None)
        return out

    def forget_degree(self, d):
        self._memo = {w: v for w, v in self._memo.items() if self.word_degree(w) < d}

    def overlaps(self, a, b):
        """Words ``p q r`` with ``a = p q`` and ``b = q r`` (q, p, r nonempty)."""
        out = []
        for k in range(1, min(len(a), len(b))):
            if a[-k:] == b[:k]:
                out.append((a[:-k], a[-k:], b[k:]))
        return out

    def s_polynomial(self, a, b, p, r) -> dict:
        """``tail(a) r - p tail(b)`` for the overlap word ``a r = p b``."""
        out = {}
        for t, c in self.rules[a].items():
            w = t + r
            out[w] = out.get(w, 0) + c
        for t, c in self.rules[b].items():
            w = p + t
            out[w] = out.get(w, 0) - c
        return {w: c for w, c in out.items() if c}

    def is_irreducible(self, w) -> bool:
        return self._find(w) is None

    def normal_words(self, N: int) -> list:
        """Irreducible words grouped by degree 0..N."""
        if N > self.bound:
            raise GradingError(f"rewriting system only complete up to degree {self.bound}")
        by_degree = [[] for _ in range(N + 1)]
        by_degree[0].append(())
        rules = self.rules
        lengths = sorted(self.lengths)
        for d in range(1, N + 1):
            bucket = by_degree[d]
            for gi, gd in enumerate(self.degs):
                if gd > d:
                    continue
                for w in by_degree[d - gd]:
                    cand = w + (gi,)
                    n = len(cand)
                    if any(L <= n and cand[n - L:] in rules for L in lengths):
                        continue
                    bucket.append(cand)
            bucket.sort(key=self._key)
        return by_degree


def complete(gens: Sequence[GradedGenerator], relations: Iterable[Mapping[tuple, Fraction]],
             bound: int) -> RewriteSystem:
    """Degree-by-degree completion of homogeneous relations up to ``bound``."""
    rs = RewriteSystem(gens, bound)
    key = rs._key
    pending = {}
    for rel in relations:
        rel = {w: Fraction(c) for w, c in rel.items() if c}
        if not rel:
            continue
        degs = {rs.word_degree(w) for w in rel}
        if len(degs) != 1:
            raise GradingError("relation is not homogeneous")
        d = degs.pop()
        if d == 0:
            raise GradingError("relation with a nonzero constant collapses the algebra")
        if d <= bound:
            pending.setdefault(d, []).append(rel)
    rule_list = []
    d = 1
    while d <= bound:
        candidates = pending.pop(d, [])
        if not candidates:
            d += 1
            continue
        echelon = {}  # lead -> monic poly (dict), all of degree d
        for cand in candidates:
            p = rs.reduce(cand)
            # eliminate leads already in the echelon set
            changed = True
            while p and changed:
                changed = False
                for w in list(p):
                    if w in echelon:
                        c = p[w]
                        for u, v in echelon[w].items():
                            s = p.get(u, 0) - c * v
                            if s:
                                p[u] = s
                            else:
                                p.pop(u, None)
                        changed = True
            if not p:
                continue
            lead = max(p, key=key)
            inv = 1 / p[lead]
            p = {w: c * inv for w, c in p.items()}
            for other_lead, q in echelon.items():
                c = q.get(lead)
                if c:
                    for u, v in p.items():
                        s = q.get(u, 0) - c * v
                        if s:
                            q[u] = s
                        else:
                            q.pop(u, None)
            echelon[lead] = p
        new_leads = sorted(echelon, key=key)
        for lead in new_leads:
            tail = {w: -c for w, c in echelon[lead].items() if w != lead}
            rs.add_rule(lead, tail)
        rs.forget_degree(d)
        # overlaps between each new rule and every rule up to and including it
        for idx, a in enumerate(new_leads):
            for b in rule_list + new_leads[:idx + 1]:
                for x, y in ((a, b), (b, a)) if a != b else ((a, a),):
                    for p, q, r in rs.overlaps(x, y):
                        od = rs.word_degree(p + q + r)
                        if od <= bound:
                            s = rs.s_polynomial(x, y, p, r)
                            if s:
                                pending.setdefault(od, []).append(s)
        rule_list.extend(new_leads)
        d += 1
    log.debug("completed %d rules to degree %d", len(rs.rules), bound)
    return rs


# ---------------------------------------------------------------------------
# presentations


@dataclass
class Elimination:
    generator: str
    expression: str
    reason: str


@dataclass
class NCPresentation:
    """``T(generators) / (relations)`` over the rationals or the integers.

    Integral presentations are stored with integer coefficients; graded ranks
    are computed after tensoring with the rationals.
    """

    generators: tuple
    relations: tuple
    ring: str = RATIONAL
    name: str = ""
    eliminations: list = field(default_factory=list)
    _systems: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self.generators = tuple(self.generators)
        check_unique_names(self.generators)
        rels = []
        for r in self.relations:
            if r.gens != self.generators:
                raise ContextError("relation over different generators")
            if not r:
                continue
            if not r.is_homogeneous():
                raise GradingError(f"relation {r} is not homogeneous")
            if self.ring == INTEGRAL and not r.is_integral():
                raise GradingError(f"integral presentation has non-integral relation {r}")
            rels.append(r)
        self.relations = tuple(rels)
        if self.ring not in (RATIONAL, INTEGRAL):
            raise ValueError(f"unknown coefficient ring {self.ring!r}")

    @property
    def names(self):
        return tuple(g.name for g in self.generators)

    def gen(self, name: str) -> NCPoly:
        return NCPoly.word(self.generators, name)

    def rewriting(self, N: int) -> RewriteSystem:
        for b, rs in self._systems.items():
            if b >= N:
                return rs
        rs = complete(self.generators, [r.terms for r in self.relations], N)
        self._systems[N] = rs
        return rs

    def rules(self, N: int):
        rs = self.rewriting(N)
        key = rs._key
        return [(lead, rs.rules[lead]) for lead in sorted(rs.rules, key=key)]

    def reduce(self, p: NCPoly, N: int | None = None) -> NCPoly:
        if N is None:
            N = max(p.degrees) if p.terms else 0
        return NCPoly(self.generators, self.rewriting(N).reduce(p.terms))

    def normal_basis(self, N: int) -> list:
        return self.rewriting(N).normal_words(N)

    def series(self, N: int) -> HilbertSeries:
        return HilbertSeries(tuple(len(ws) for ws in self.normal_basis(N)))

    def confluence_failures(self, N: int) -> list:
        """Overlap words of degree <= N whose two reductions differ."""
        rs = self.rewriting(N)
        failures = []
        leads = list(rs.rules)
        for a in leads:
            for b in leads:
                for p, q, r in rs.overlaps(a, b):
                    if rs.word_degree(p + q + r) > N:
                        continue
                    if rs.reduce(rs.s_polynomial(a, b, p, r)):
                        failures.append(p + q + r)
        for rel in self.relations:
            if rel.degree <= N and rs.reduce(rel.terms):
                failures.append(("relation", str(rel)))
        return failures

    def relation_strings(self):
        return [str(r) for r in self.relations]

    def with_relations(self, relations, name=None) -> "NCPresentation":
        return NCPresentation(self.generators, tuple(relations), self.ring, name or self.name,
                              list(self.eliminations))


def commutator(x: NCPoly, y: NCPoly, sign: int) -> NCPoly:
    """``x y - sign * y x``."""
    return x * y - sign * (y * x)


def graded_commutator(p: NCPresentation, a: str, b: str) -> NCPoly:
    ga = p.generators[p.names.index(a)]
    gb = p.generators[p.names.index(b)]
    sign = (-1) ** (ga.degree * gb.degree)
    return commutator(p.gen(a), p.gen(b), sign)


def free_graded_commutative(generators: Sequence[GradedGenerator], extra=(), ring=RATIONAL,
                            name="") -> NCPresentation:
    """All generators graded-commute; odd ones square to zero; ``extra`` relations added."""
    gens = tuple(generators)
    rels = list(extra)
    for i, g in enumerate(gens):
        gi = NCPoly(gens, {(i,): 1})
        for j in range(i, len(gens)):
            h = gens[j]
            if i == j:
                if g.is_odd:
                    rels.append(gi * gi)
                continue
            gj = NCPoly(gens, {(j,): 1})
            rels.append(commutator(gi, gj, (-1) ** (g.degree * h.degree)))
    return NCPresentation(gens, tuple(rels), ring, name)


__all__ = [
    "NCPoly", "NCPresentation", "RewriteSystem", "Elimination", "complete", "commutator",
    "graded_commutator", "free_graded_commutative", "RATIONAL", "INTEGRAL",
]
