"""Minimal-model fragments of formal spaces and their homotopy Lie algebras."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Mapping, Sequence

from .errors import ArityError, GradingError, InvalidLieAlgebraError, ReductionError
from .graded import CohomPresentation, GradedGenerator, PolyRing, Polynomial


def _fresh(prefix: str, count: int, taken: set) -> list:
    names = []
    for i in range(1, count + 1):
        name = f"{prefix}{i}"
        while name in taken:
            name += "_"
        taken.add(name)
        names.append(name)
    return names


@dataclass(frozen=True)
class ModelFragment:
    """Generators ``u`` (even cocycles), ``v`` (kill the relations), ``z`` (odd cocycles).

    ``differential`` maps each v-name to a polynomial in the u-generators; u and
    z are cocycles and are not listed.
    """

    ring: PolyRing
    v: tuple
    z: tuple
    differential: Mapping[str, Polynomial]

    def __post_init__(self):
        for g in self.v:
            dv = self.differential[g.name]
            if not dv.is_zero and dv.degree != g.degree + 1:
                raise GradingError(f"d({g.name}) has degree {dv.degree}, expected {g.degree + 1}")

    @property
    def u(self) -> tuple:
        return self.ring.gens

    @property
    def generators(self) -> tuple:
        return tuple(self.ring.gens) + tuple(self.v) + tuple(self.z)

    def degrees(self) -> list:
        return [g.degree for g in self.generators]

    def d(self, name: str) -> Polynomial:
        """Differential of any generator (zero on cocycles)."""
        if name in self.differential:
            return self.differential[name]
        if name in self.ring.names or any(g.name == name for g in self.z):
            return self.ring.zero()
        raise KeyError(name)


def build_formal_model(pres: CohomPresentation, v_prefix: str = "v") -> ModelFragment:
    """Model of ``(H, 0)`` for a reduced complete-intersection presentation."""
    ring = pres.ring
    for r in pres.relations:
        if r.word_length_component(1):
            raise ReductionError(
                f"relation {r} has a linear part; eliminate the generator before building the model"
            )
        if r.word_length_component(0):
            raise ReductionError(f"relation {r} has a constant term")
    taken = set(ring.names) | {z.name for z in pres.exterior}
    names = _fresh(v_prefix, len(pres.relations), taken)
    v = tuple(GradedGenerator(n, r.degree - 1) for n, r in zip(names, pres.relations))
    differential = {n: r for n, r in zip(names, pres.relations)}
    return ModelFragment(ring, v, tuple(pres.exterior), differential)


def quadratic_part(m: ModelFragment) -> dict:
    """Word-length-two component of each ``d(v_j)``; zero entries are kept."""
    return {g.name: m.differential[g.name].word_length_component(2) for g in m.v}


def _koszul_sign(degrees: Sequence[int], perm: Sequence[int]) -> int:
    """Sign ``e`` with ``v_perm[0] ^ ... = e * v_0 ^ v_1 ^ ...``."""
    sign = 1
    n = len(perm)
    for i in range(n):
        for j in range(i + 1, n):
            if perm[i] > perm[j] and degrees[perm[i]] % 2 and degrees[perm[j]] % 2:
                sign = -sign
    return sign


def _base_pairing(v: GradedGenerator, dual_of: GradedGenerator) -> int:
    # <v; sx> = (-1)^{deg v} sx(v) with sx(v) = 1 on the dual basis
    if v.name != dual_of.name:
        return 0
    return -1 if v.degree % 2 else 1


def pairing_eval(word, args: Sequence[GradedGenerator], ring: PolyRing | None = None) -> Fraction:
    """Evaluate ``<word; s x_k, ..., s x_1>`` for suspended dual-basis arguments.

    ``word`` is either a list of model generators (a wedge monomial, repetition
    allowed) or a :class:`Polynomial` in the u-generators, in which case the
    pairing is extended linearly.  ``args`` names, for each suspended argument,
    the model generator it is dual to, in the order written inside the bracket.
    """
    args = list(args)
    if isinstance(word, Polynomial):
        total = Fraction(0)
        for mono, c in word.terms.items():
            factors = []
            for gen, e in zip(word.ring.gens, mono):
                factors.extend([gen] * e)
            if len(factors) != len(args):
                raise ArityError(f"monomial of word length {len(factors)} paired with {len(args)} arguments")
            total += c * pairing_eval(factors, args)
        return total
    factors = list(word)
    k = len(factors)
    if k != len(args):
        raise ArityError(f"word length {k} but {len(args)} arguments")
    seen_odd = set()
    for f in factors:
        if f.is_odd:
            if f.name in seen_odd:
                return Fraction(0)
            seen_odd.add(f.name)
    # the arguments are written s x_k, ..., s x_1
    sx = list(reversed(args))
    degrees = [f.degree for f in factors]
    total = 0
    for perm in permutations(range(k)):
        prod = 1
        for i, p in enumerate(perm):
            prod *= _base_pairing(factors[p], sx[i])
            if not prod:
                break
        if prod:
            total += _koszul_sign(degrees, perm) * prod
    return Fraction(total)


@dataclass
class LieAlgebraData:
    """A graded Lie algebra on a named basis with exact structure constants.

    ``brackets[(k, l)]`` is a dict ``{m: c}`` meaning ``[e_k, e_l] = sum c e_m``;
    missing pairs are zero.
    """

    basis: tuple
    brackets: dict = field(default_factory=dict)
    dual_of: dict = field(default_factory=dict)  # basis name -> model generator name

    def __post_init__(self):
        self.basis = tuple(self.basis)
        self.brackets = {
            kl: {m: Fraction(c) for m, c in vals.items() if c}
            for kl, vals in self.brackets.items()
        }
        self.brackets = {kl: vals for kl, vals in self.brackets.items() if vals}

    @property
    def names(self):
        return tuple(b.name for b in self.basis)

    @property
    def degrees(self):
        return tuple(b.degree for b in self.basis)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def bracket(self, x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> dict:
        """Bracket of two linear combinations ``{index: coefficient}``."""
        out = {}
        for k, a in x.items():
            for l, b in y.items():
                for m, c in self.brackets.get((k, l), {}).items():
                    out[m] = out.get(m, 0) + a * b * c
        return {m: c for m, c in out.items() if c}

    def basis_bracket(self, k: int, l: int) -> dict:
        return dict(self.brackets.get((k, l), {}))

    def is_abelian(self) -> bool:
        return not self.brackets

    def scaled(self, factor) -> "LieAlgebraData":
        factor = Fraction(factor)
        if factor == 0:
            raise ValueError("scale factor must be nonzero")
        return LieAlgebraData(
            self.basis,
            {kl: {m: c * factor for m, c in v.items()} for kl, v in self.brackets.items()},
            dict(self.dual_of),
        )

    # law checks -------------------------------------------------------------
    def degree_violations(self):
        bad = []
        deg = self.degrees
        for (k, l), vals in self.brackets.items():
            for m in vals:
                if deg[m] != deg[k] + deg[l]:
                    bad.append((k, l, m))
        return bad

    def antisymmetry_violations(self):
        bad = []
        deg = self.degrees
        n = len(self.basis)
        for k in range(n):
            for l in range(n):
                lhs = self.basis_bracket(k, l)
                sign = -((-1) ** (deg[k] * deg[l]))
                rhs = {m: sign * c for m, c in self.basis_bracket(l, k).items()}
                if lhs != rhs:
                    bad.append((k, l))
        return bad

    def jacobi_violations(self):
        """Graded Jacobi on every basis triple.

        (-1)^{|x||z|}[x,[y,z]] + (-1)^{|y||x|}[y,[z,x]] + (-1)^{|z||y|}[z,[x,y]] = 0
        """
        bad = []
        deg = self.degrees
        n = len(self.basis)
        unit = [{i: Fraction(1)} for i in range(n)]
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    total = {}
                    for sign_exp, a, b, c in (
                        (deg[x] * deg[z], x, y, z),
                        (deg[y] * deg[x], y, z, x),
                        (deg[z] * deg[y], z, x, y),
                    ):
                        inner = self.bracket(unit[b], unit[c])
                        if not inner:
                            continue
                        outer = self.bracket(unit[a], inner)
                        s = (-1) ** sign_exp
                        for m, v in outer.items():
                            total[m] = total.get(m, 0) + s * v
                    if any(v for v in total.values()):
                        bad.append((x, y, z))
        return bad

    def validate(self):
        if self.degree_violations():
            raise InvalidLieAlgebraError(f"degree additivity fails at {self.degree_violations()[:3]}")
        if self.antisymmetry_violations():
            raise InvalidLieAlgebraError(f"antisymmetry fails at {self.antisymmetry_violations()[:3]}")
        if self.jacobi_violations():
            raise InvalidLieAlgebraError(f"Jacobi identity fails at {self.jacobi_violations()[:3]}")

    def nonzero_brackets(self):
        """``(x, y, {z: c})`` for x <= y by basis position, for display."""
        out = []
        n = len(self.basis)
        for k in range(n):
            for l in range(k, n):
                vals = self.brackets.get((k, l))
                if vals:
                    out.append((self.basis[k].name, self.basis[l].name,
                                {self.basis[m].name: c for m, c in sorted(vals.items())}))
        return out


def homotopy_lie(m: ModelFragment, prefixes=("a", "b", "c")) -> LieAlgebraData:
    """Homotopy Lie algebra of the model, with brackets read off the quadratic part.

    Basis element ``e`` dual to model generator ``w`` has degree ``deg w - 1``.
    The structure constant of ``[x, y]`` on the element dual to ``v`` is
    ``(-1)^(deg y + 1) <d_1 v; sx, sy>``; brackets not forced by ``d_1`` vanish.
    """
    d1 = quadratic_part(m)
    groups = (m.u, m.v, m.z)
    taken = set()
    basis = []
    dual_of = {}
    model_gen = []
    for prefix, gens in zip(prefixes, groups):
        names = _fresh(prefix, len(gens), taken)
        for n, g in zip(names, gens):
            basis.append(GradedGenerator(n, g.degree - 1))
            dual_of[n] = g.name
            model_gen.append(g)
    index_of_v = {g.name: i for i, g in enumerate(model_gen) if g.name in d1}
    brackets = {}
    u_positions = range(len(m.u))  # only u-duals can pair with a quadratic form in u
    for vname, q in d1.items():
        if q.is_zero:
            continue
        target = index_of_v[vname]
        for k in u_positions:
            for l in u_positions:
                val = pairing_eval(q, [model_gen[k], model_gen[l]])
                if not val:
                    continue
                coeff = (-1) ** (basis[l].degree + 1) * val
                brackets.setdefault((k, l), {})
                brackets[(k, l)][target] = brackets[(k, l)].get(target, 0) + coeff
    return LieAlgebraData(tuple(basis), brackets, dual_of)


__all__ = [
    "ModelFragment", "LieAlgebraData", "build_formal_model", "quadratic_part",
    "pairing_eval", "homotopy_lie",
]
