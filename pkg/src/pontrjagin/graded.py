"""Graded commutative polynomials over the rationals and Hilbert series.

Degrees are topological: a generator ``x`` declared with degree 2 contributes
2 to the degree of every monomial it divides, regardless of its exponent
position.  Polynomials only involve even-degree generators; odd generators
enter the picture through exterior factors in Hilbert series and through the
noncommutative presentations in :mod:`pontrjagin.noncomm`.
"""
from __future__ import annotations

import ast
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import ContextError, GradingError, SpecSyntaxError, SubstitutionError

Monomial = tuple  # exponent vector, one entry per ring generator


@dataclass(frozen=True)
class GradedGenerator:
    name: str
    degree: int

    def __post_init__(self):
        if not isinstance(self.degree, int) or self.degree < 1:
            raise GradingError(f"generator {self.name!r} needs a positive degree, got {self.degree!r}")
        if not self.name.isidentifier():
            raise GradingError(f"generator name {self.name!r} is not an identifier")

    @property
    def parity(self) -> int:
        return self.degree % 2

    @property
    def is_odd(self) -> bool:
        return self.degree % 2 == 1


def check_unique_names(gens: Iterable[GradedGenerator]) -> None:
    seen = set()
    for g in gens:
        if g.name in seen:
            raise GradingError(f"duplicate generator name {g.name!r}")
        seen.add(g.name)


class PolyRing:
    """The polynomial ring on an ordered tuple of even-degree generators."""

    __slots__ = ("gens", "names", "degrees", "_index", "_key_cache")

    def __init__(self, gens: Sequence[GradedGenerator]):
        gens = tuple(gens)
        check_unique_names(gens)
        for g in gens:
            if g.is_odd:
                raise GradingError(f"polynomial generator {g.name!r} has odd degree {g.degree}")
        self.gens = gens
        self.names = tuple(g.name for g in gens)
        self.degrees = tuple(g.degree for g in gens)
        self._index = {n: i for i, n in enumerate(self.names)}
        self._key_cache = {}

    @classmethod
    def from_names(cls, names: Iterable[str], degree: int = 2) -> "PolyRing":
        return cls([GradedGenerator(n, degree) for n in names])

    def __len__(self):
        return len(self.gens)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.gens == other.gens

    def __hash__(self):
        return hash(self.gens)

    def __repr__(self):
        inner = ", ".join(f"{g.name}:{g.degree}" for g in self.gens)
        return f"PolyRing({inner})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ContextError(f"{name!r} is not a generator of {self!r}") from None

    def monomial_degree(self, m: Monomial) -> int:
        return sum(e * d for e, d in zip(m, self.degrees))

    def one(self) -> "Polynomial":
        return Polynomial(self, {(0,) * len(self.gens): Fraction(1)})

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def gen(self, name: str) -> "Polynomial":
        i = self.index(name)
        m = tuple(1 if j == i else 0 for j in range(len(self.gens)))
        return Polynomial(self, {m: Fraction(1)})

    def gens_as_polys(self) -> tuple:
        return tuple(self.gen(n) for n in self.names)

    def constant(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * len(self.gens): Fraction(c)})

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def monomials_of_degree(self, d: int):
        """All exponent vectors of topological degree ``d``."""
        return list(_monomials_of_degree(self.degrees, d))

    def grlex_key(self, m: Monomial):
        """Display order: degree, then lexicographic in declaration order."""
        return (self.monomial_degree(m), m)


def _monomials_of_degree(degrees, d, start=0):
    if start == len(degrees):
        if d == 0:
            yield ()
        return
    w = degrees[start]
    for e in range(d // w, -1, -1):
        for rest in _monomials_of_degree(degrees, d - e * w, start + 1):
            yield (e,) + rest


def _coerce_scalar(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"unsupported scalar {c!r}")


class Polynomial:
    """An immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("ring", "terms", "__dict__")

    def __init__(self, ring: PolyRing, terms: Mapping[Monomial, Fraction]):
        self.ring = ring
        self.terms = {m: Fraction(c) for m, c in terms.items() if c != 0}

    # construction helpers -------------------------------------------------
    @classmethod
    def _raw(cls, ring, terms):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        return obj

    def _check(self, other):
        if other.ring != self.ring:
            raise ContextError(f"ring mismatch: {self.ring!r} vs {other.ring!r}")

    def _lift(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return self.ring.constant(_coerce_scalar(other))

    # arithmetic ------------------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, 0) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return Polynomial._raw(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = _coerce_scalar(other)
            if c == 0:
                return self.ring.zero()
            return Polynomial._raw(self.ring, {m: c * v for m, v in self.terms.items()})
        self._check(other)
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = terms.get(m, 0) + c1 * c2
                if s:
                    terms[m] = s
                else:
                    terms.pop(m, None)
        return Polynomial._raw(self.ring, terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = _coerce_scalar(other)
        return self * (1 / c)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # comparison ------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    # grading ---------------------------------------------------------------
    @cached_property
    def degrees(self) -> frozenset:
        return frozenset(self.ring.monomial_degree(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len(self.degrees) <= 1

    @property
    def degree(self) -> int:
        """Topological degree of a homogeneous polynomial (-1 for zero)."""
        if not self.terms:
            return -1
        if len(self.degrees) != 1:
            raise GradingError(f"{self} is not homogeneous")
        return next(iter(self.degrees))

    def homogeneous_component(self, d: int) -> "Polynomial":
        return Polynomial._raw(
            self.ring, {m: c for m, c in self.terms.items() if self.ring.monomial_degree(m) == d}
        )

    def word_length_component(self, k: int) -> "Polynomial":
        """Terms whose monomial has exactly ``k`` factors counted with multiplicity."""
        return Polynomial._raw(self.ring, {m: c for m, c in self.terms.items() if sum(m) == k})

    def word_lengths(self) -> frozenset:
        return frozenset(sum(m) for m in self.terms)

    def variables(self) -> tuple:
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return tuple(self.ring.names[i] for i in sorted(used))

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(tuple(m), Fraction(0))

    def sorted_terms(self):
        """Terms in graded-lex order, largest first."""
        return sorted(self.terms.items(), key=lambda t: self.ring.grlex_key(t[0]), reverse=True)

    def content_normalized(self) -> "Polynomial":
        """Scale so the graded-lex leading coefficient is 1."""
        if not self.terms:
            return self
        lead = self.sorted_terms()[0][1]
        return self * (1 / lead)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    # rendering -------------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for m, c in self.sorted_terms():
            mono = "*".join(
                (n if e == 1 else f"{n}^{e}") for n, e in zip(self.ring.names, m) if e
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Polynomial({self})"


def substitute(p: Polynomial, assignment: Mapping[str, Polynomial], graded: bool = True,
               target: PolyRing | None = None) -> Polynomial:
    """Apply the ring homomorphism sending each generator to its image.

    Generators of ``p`` that do not occur in any term may be omitted from
    ``assignment``.  Every generator that does occur needs an image unless it
    also exists in the target ring, in which case it is sent to itself.
    """
    images = dict(assignment)
    if target is None:
        rings = {q.ring for q in images.values() if isinstance(q, Polynomial)}
        if len(rings) > 1:
            raise ContextError("images live in different rings")
        target = rings.pop() if rings else p.ring
    for name, q in list(images.items()):
        if not isinstance(q, Polynomial):
            images[name] = target.constant(q)
        elif q.ring != target:
            raise ContextError(f"image of {name!r} is not in the target ring")
    for i, name in enumerate(p.ring.names):
        if name in images:
            continue
        if any(m[i] for m in p.terms):
            if name in target.names and target.gens[target.index(name)].degree == p.ring.degrees[i]:
                images[name] = target.gen(name)
            else:
                raise SubstitutionError(f"no image given for generator {name!r}")
    if graded:
        for i, name in enumerate(p.ring.names):
            q = images.get(name)
            if q is None or q.is_zero:
                continue
            if q.degrees != {p.ring.degrees[i]}:
                raise GradingError(
                    f"image of {name!r} has degree(s) {sorted(q.degrees)}, expected {p.ring.degrees[i]}"
                )
    result = target.zero()
    power_cache = {}
    for m, c in p.terms.items():
        term = target.constant(c)
        for i, e in enumerate(m):
            if not e:
                continue
            key = (i, e)
            if key not in power_cache:
                power_cache[key] = images[p.ring.names[i]] ** e
            term = term * power_cache[key]
        result = result + term
    return result


# ---------------------------------------------------------------------------
# parsing

_ALLOWED_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Pow, ast.Div)


def parse_polynomial(text: str, ring: PolyRing, line: int | None = None) -> Polynomial:
    """Parse ``x1^2 + 3/2*x1*x2 - (x1+x2)^2`` style input into ``ring``."""
    src = text.replace("^", "**").replace("·", "*")
    lead = len(src) - len(src.lstrip())

    def col(offset):
        # column in ``text``: undo the lstrip and the widening of each ``^``
        offset += lead
        return offset - src[:offset].count("**") + text[:offset].count("**") + 1

    try:
        tree = ast.parse(src.strip(), mode="eval")
    except SyntaxError as exc:
        where = col(exc.offset - 1) if exc.offset else None
        raise SpecSyntaxError(f"cannot parse polynomial {text!r}: {exc.msg}", line, where) from None

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return ring.constant(node.value)
        if isinstance(node, ast.Name):
            if node.id not in ring.names:
                raise SpecSyntaxError(f"unknown generator {node.id!r}", line, col(node.col_offset))
            return ring.gen(node.id)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and isinstance(node.op, _ALLOWED_BINOPS):
            left = ev(node.left)
            if isinstance(node.op, ast.Pow):
                exp = ev(node.right)
                if not (exp.is_zero or exp.degrees == {0}):
                    raise SpecSyntaxError("exponent must be an integer constant", line, col(node.col_offset))
                value = exp.coefficient((0,) * len(ring)) if exp.terms else Fraction(0)
                if value.denominator != 1 or value < 0:
                    raise SpecSyntaxError("exponent must be a nonnegative integer", line, col(node.col_offset))
                return left ** int(value)
            right = ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if right.is_zero or right.degrees != {0}:
                raise SpecSyntaxError("can only divide by a nonzero constant", line, col(node.col_offset))
            return left / right.coefficient((0,) * len(ring))
        raise SpecSyntaxError(f"unsupported syntax in {text!r}", line, col(getattr(node, "col_offset", 0)))

    return ev(tree)


# ---------------------------------------------------------------------------
# Hilbert series


@dataclass(frozen=True)
class HilbertSeries:
    """Truncated graded dimension: ``coefficients[d]`` is the rank in degree d."""

    coefficients: tuple

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coefficients)
        if not coeffs:
            raise ValueError("a series needs at least the degree-0 coefficient")
        if any(c < 0 for c in coeffs):
            raise GradingError(f"negative graded dimension in {list(coeffs)}")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def bound(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, d):
        return self.coefficients[d]

    def __len__(self):
        return len(self.coefficients)

    def __iter__(self):
        return iter(self.coefficients)

    def _same_bound(self, other):
        if self.bound != other.bound:
            raise ValueError(f"truncation bounds differ: {self.bound} vs {other.bound}")

    def __mul__(self, other: "HilbertSeries") -> "HilbertSeries":
        self._same_bound(other)
        return HilbertSeries(tuple(_convolve(self.coefficients, other.coefficients, self.bound)))

    def first_mismatch(self, other: "HilbertSeries"):
        self._same_bound(other)
        for d, (a, b) in enumerate(zip(self, other)):
            if a != b:
                return d
        return None

    def truncate(self, n: int) -> "HilbertSeries":
        if n > self.bound:
            raise ValueError(f"cannot extend a series truncated at {self.bound} to {n}")
        return HilbertSeries(self.coefficients[: n + 1])

    def __str__(self):
        return ",".join(map(str, self.coefficients))


def _convolve(a, b, n):
    out = [0] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if x:
            for j, y in enumerate(b[: n + 1 - i]):
                out[i + j] += x * y
    return out


def _series_product(N, *, divide=(), multiply_plus=(), multiply_minus=()):
    """Integer power series truncated at N as a plain list (may go negative)."""
    coeffs = [0] * (N + 1)
    coeffs[0] = 1
    for d in multiply_plus:  # (1 + t^d)
        for i in range(N, d - 1, -1):
            coeffs[i] += coeffs[i - d]
    for d in multiply_minus:  # (1 - t^d)
        for i in range(N, d - 1, -1):
            coeffs[i] -= coeffs[i - d]
    for d in divide:  # 1 / (1 - t^d)
        for i in range(d, N + 1):
            coeffs[i] += coeffs[i - d]
    return coeffs


def free_graded_series(gens: Iterable, N: int) -> HilbertSeries:
    """Series of the free graded-commutative algebra on ``gens``.

    ``gens`` may hold :class:`GradedGenerator` objects or bare degrees.
    """
    if N < 0:
        raise ValueError("truncation bound must be nonnegative")
    degrees = [g.degree if isinstance(g, GradedGenerator) else int(g) for g in gens]
    for d in degrees:
        if d < 1:
            raise GradingError(f"generator degree must be positive, got {d}")
    odd = [d for d in degrees if d % 2]
    even = [d for d in degrees if d % 2 == 0]
    return HilbertSeries(tuple(_series_product(N, divide=even, multiply_plus=odd)))


def complete_intersection_series(var_degrees: Sequence[int], rel_degrees: Sequence[int],
                                 ext_degrees: Sequence[int], N: int) -> HilbertSeries:
    if N < 0:
        raise ValueError("truncation bound must be nonnegative")
    for d in rel_degrees:
        if d < 2:
            raise GradingError(f"relation degree {d} is not achievable")
    coeffs = _series_product(N, divide=var_degrees, multiply_plus=ext_degrees,
                             multiply_minus=rel_degrees)
    return HilbertSeries(tuple(coeffs))


def monomial_count_series(ring: PolyRing, N: int, is_standard=None) -> HilbertSeries:
    """Count monomials (optionally only those accepted by ``is_standard``) per degree."""
    out = []
    for d in range(N + 1):
        mons = _monomials_of_degree(ring.degrees, d)
        if is_standard is None:
            out.append(sum(1 for _ in mons))
        else:
            out.append(sum(1 for m in mons if is_standard(m)))
    return HilbertSeries(tuple(out))


# ---------------------------------------------------------------------------
# cohomology presentations


@dataclass(frozen=True)
class CohomPresentation:
    """``Q[generators] / (relations) (x) exterior(exterior)``."""

    ring: PolyRing
    relations: tuple
    exterior: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "relations", tuple(self.relations))
        object.__setattr__(self, "exterior", tuple(self.exterior))
        check_unique_names(list(self.ring.gens) + list(self.exterior))
        for z in self.exterior:
            if not z.is_odd:
                raise GradingError(f"exterior generator {z.name!r} must have odd degree")
        for r in self.relations:
            if r.ring != self.ring:
                raise ContextError("relation lives in a different ring")
            if r.is_zero:
                raise GradingError("zero relation")
            if not r.is_homogeneous():
                raise GradingError(f"relation {r} is not homogeneous (degrees {sorted(r.degrees)})")

    @property
    def generators(self):
        return self.ring.gens

    def relation_degrees(self):
        return [r.degree for r in self.relations]

    def expected_series(self, N: int) -> HilbertSeries:
        return complete_intersection_series(
            self.ring.degrees, self.relation_degrees(), [z.degree for z in self.exterior], N
        )

    def to_text(self) -> str:
        """Render in the spec-file grammar understood by :mod:`pontrjagin.specfile`."""
        lines = ["generators"] + [f"  {g.name} {g.degree}" for g in self.ring.gens]
        if self.relations:
            lines.append("relations")
            lines += [f"  {r}" for r in self.relations]
        if self.exterior:
            lines.append("exterior")
            lines += [f"  {z.name} {z.degree}" for z in self.exterior]
        return "\n".join(lines) + "\n"


def all_monomials_upto(ring: PolyRing, N: int):
    for d in range(N + 1):
        yield from _monomials_of_degree(ring.degrees, d)


def random_polynomial(ring: PolyRing, rng, max_exp: int = 3, n_terms: int = 4, coeff_range: int = 5):
    """A small random polynomial for property tests (``rng`` is a ``random.Random``)."""
    terms = {}
    for _ in range(n_terms):
        m = tuple(rng.randint(0, max_exp) for _ in ring.gens)
        c = Fraction(rng.randint(-coeff_range, coeff_range), rng.randint(1, 3))
        terms[m] = terms.get(m, 0) + c
    return Polynomial(ring, terms)


__all__ = [
    "GradedGenerator", "PolyRing", "Polynomial", "HilbertSeries", "CohomPresentation",
    "substitute", "free_graded_series", "complete_intersection_series", "parse_polynomial",
    "monomial_count_series", "check_unique_names",
]
