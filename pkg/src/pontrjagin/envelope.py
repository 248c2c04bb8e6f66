"""Universal enveloping algebras of homotopy Lie algebras, and their checks."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ContextError
from .graded import HilbertSeries, free_graded_series
from .noncomm import Elimination, NCPoly, NCPresentation, RATIONAL, commutator
from .sullivan import LieAlgebraData


def enveloping(L: LieAlgebraData, eliminate: bool = True, name: str = "") -> NCPresentation:
    """``T(L) / (x y - (-1)^{|x||y|} y x - [x, y])``.

    With ``eliminate`` set, even central basis elements that arise as a single
    bracket value are solved for and substituted away; each step is recorded
    in ``eliminations``.
    """
    L.validate()
    gens = L.basis
    e = [NCPoly(gens, {(i,): 1}) for i in range(len(gens))]
    rels = []
    for k in range(len(gens)):
        for l in range(k, len(gens)):
            dk, dl = gens[k].degree, gens[l].degree
            if k == l and dk % 2 == 0:
                continue
            rel = commutator(e[k], e[l], (-1) ** (dk * dl))
            for m, c in L.basis_bracket(k, l).items():
                rel = rel - c * e[m]
            rels.append(rel)
    pres = NCPresentation(gens, tuple(rels), RATIONAL, name)
    if eliminate:
        pres = eliminate_central(pres, L)
    return pres


def _central(L: LieAlgebraData, m: int) -> bool:
    return not any(m in kl for kl in L.brackets)


def _definition_for(L: LieAlgebraData, m: int):
    """A pair (k, l) with [e_k, e_l] = c e_m exactly; diagonal pairs preferred."""
    single = [(kl, vals[m]) for kl, vals in sorted(L.brackets.items())
              if set(vals) == {m} and kl[0] <= kl[1]]
    diagonal = [t for t in single if t[0][0] == t[0][1]]
    if diagonal:
        return diagonal[0]
    return single[0] if single else None


def eliminate_generator(pres: NCPresentation, name: str, expression: NCPoly,
                        reason: str = "") -> NCPresentation:
    """Substitute ``name := expression`` everywhere and drop the generator."""
    idx = pres.names.index(name)
    if any(idx in w for w in expression.terms):
        raise ContextError(f"expression for {name!r} mentions {name!r}")
    new_gens = tuple(g for g in pres.generators if g.name != name)
    image = expression.substitute({}, new_gens)
    rels = [r.substitute({idx: image}, new_gens) for r in pres.relations]
    rels = [r for r in rels if r]
    out = NCPresentation(new_gens, tuple(rels), pres.ring, pres.name, list(pres.eliminations))
    out.eliminations.append(Elimination(name, str(expression), reason))
    return out


def eliminate_central(pres: NCPresentation, L: LieAlgebraData) -> NCPresentation:
    degs = L.degrees
    for m in range(len(L.basis)):
        if degs[m] % 2 or not _central(L, m):
            continue
        found = _definition_for(L, m)
        if found is None:
            continue
        (k, l), c = found
        gens = pres.generators
        ek = NCPoly.word(gens, L.basis[k].name)
        el = NCPoly.word(gens, L.basis[l].name)
        # e_k e_l - (-1)^{|k||l|} e_l e_k = c e_m
        expr = commutator(ek, el, (-1) ** (degs[k] * degs[l])) * (Fraction(1) / c)
        reason = f"[{L.basis[k].name},{L.basis[l].name}] = {c}*{L.basis[m].name}"
        pres = eliminate_generator(pres, L.basis[m].name, expr, reason)
    return pres


def pbw_series(L: LieAlgebraData, N: int) -> HilbertSeries:
    return free_graded_series(L.basis, N)


# ---------------------------------------------------------------------------
# reports


@dataclass
class VerificationReport:
    """Outcome of a degreewise comparison; ``degree`` is the first mismatch."""

    check: str
    status: str  # "match" | "mismatch" | "skipped"
    degree: int | None = None
    bound: int | None = None
    actual: list | None = None
    expected: list | None = None
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status == "match"

    def to_dict(self):
        out = {"check": self.check, "status": self.status, "bound": self.bound}
        if self.degree is not None:
            out["degree"] = self.degree
        if self.actual is not None:
            out["actual"] = list(self.actual)
        if self.expected is not None:
            out["expected"] = list(self.expected)
        if self.detail:
            out["detail"] = self.detail
        return out


def skipped(check: str, why: str) -> VerificationReport:
    return VerificationReport(check, "skipped", detail=why)


def _series_report(check, actual: HilbertSeries, expected: HilbertSeries, N, detail=""):
    bad = actual.first_mismatch(expected)
    return VerificationReport(check, "match" if bad is None else "mismatch", bad, N,
                              list(actual), list(expected), detail)


def verify_presentation(p: NCPresentation, s: HilbertSeries, N: int | None = None) -> VerificationReport:
    if N is None:
        N = s.bound
    return _series_report("normal-basis vs series", p.series(N), s.truncate(N), N)


def rank_compare(int_p: NCPresentation, rat_p: NCPresentation, N: int) -> VerificationReport:
    return _series_report("integral vs rational ranks", int_p.series(N), rat_p.series(N), N,
                          f"{int_p.name or 'integral'} vs {rat_p.name or 'rational'}")


def _degree_sorted(gens):
    return sorted(range(len(gens)), key=lambda i: (gens[i].degree, i))


def compare_presentations(actual: NCPresentation, expected: NCPresentation, N: int) -> VerificationReport:
    """Match two presentations up to a degree-preserving renaming of generators.

    Generators are paired by (degree, position).  The two-sided ideals must
    agree: every relation of one side reduces to zero modulo the other, and
    the graded dimensions agree through ``N``.
    """
    check = "golden presentation"
    ia, ie = _degree_sorted(actual.generators), _degree_sorted(expected.generators)
    da = [actual.generators[i].degree for i in ia]
    de = [expected.generators[i].degree for i in ie]
    if da != de:
        diff = sorted(set(da) ^ set(de)) or sorted(set(d for d in da if da.count(d) != de.count(d)))
        return VerificationReport(check, "mismatch", diff[0] if diff else None, N,
                                  detail=f"generator degrees {da} vs {de}")
    sa, se = actual.series(N), expected.series(N)
    bad = sa.first_mismatch(se)
    if bad is not None:
        return VerificationReport(check, "mismatch", bad, N, list(sa), list(se), "series differ")
    to_actual = {ie[k]: NCPoly(actual.generators, {(ia[k],): 1}) for k in range(len(ia))}
    to_expected = {ia[k]: NCPoly(expected.generators, {(ie[k],): 1}) for k in range(len(ia))}

    def first_failure(src, images, target_gens, target):
        for r in src.relations:
            if r.degree > N:
                continue
            mapped = r.substitute(images, target_gens)
            if target.reduce(mapped, N):
                return r
        return None

    r = first_failure(expected, to_actual, actual.generators, actual)
    if r is not None:
        return VerificationReport(check, "mismatch", r.degree, N, list(sa), list(se),
                                  f"expected relation {r} does not hold")
    r = first_failure(actual, to_expected, expected.generators, expected)
    if r is not None:
        return VerificationReport(check, "mismatch", r.degree, N, list(sa), list(se),
                                  f"computed relation {r} does not hold in the expected ring")
    mapping = ", ".join(f"{actual.generators[ia[k]].name}->{expected.generators[ie[k]].name}"
                        for k in range(len(ia)))
    return VerificationReport(check, "match", None, N, list(sa), list(se), mapping)


@dataclass
class LieCheck:
    antisymmetry: list = field(default_factory=list)
    jacobi: list = field(default_factory=list)
    degrees: list = field(default_factory=list)

    @property
    def ok(self):
        return not (self.antisymmetry or self.jacobi or self.degrees)


def lie_laws(L: LieAlgebraData) -> VerificationReport:
    bad = LieCheck(L.antisymmetry_violations(), L.jacobi_violations(), L.degree_violations())
    if bad.ok:
        return VerificationReport("Lie algebra laws", "match",
                                  detail="antisymmetry, Jacobi and degree additivity hold")
    return VerificationReport("Lie algebra laws", "mismatch",
                              detail=f"antisymmetry {bad.antisymmetry[:3]}, jacobi {bad.jacobi[:3]}, "
                                     f"degrees {bad.degrees[:3]}")


__all__ = [
    "enveloping", "eliminate_central", "eliminate_generator", "pbw_series",
    "verify_presentation", "rank_compare", "compare_presentations", "VerificationReport",
    "lie_laws", "skipped",
]
