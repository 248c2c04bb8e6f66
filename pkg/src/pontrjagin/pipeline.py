"""Cohomology -> model -> homotopy Lie algebra -> loop homology, with checks."""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .catalog import SpaceSpec, splitting_series_check
from .envelope import (VerificationReport, compare_presentations, enveloping, lie_laws, pbw_series,
                       rank_compare, skipped, verify_presentation)
from .errors import NotCartanPairError, PontrjaginError, StageError
from .graded import CohomPresentation, free_graded_series, monomial_count_series
from .groebner import CartanReduction, cartan_reduce, groebner_basis, is_member, is_regular_sequence
from .sullivan import build_formal_model, homotopy_lie, quadratic_part

STAGES = ("cohomology", "model", "lie", "loop")
RINGS = ("rational", "integral", "both")


def rational_text(c) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


@dataclass
class PipelineReport:
    input: str
    label: str
    degree_bound: int
    ring: str
    stages: dict = field(default_factory=dict)
    verdicts: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)
    error: dict | None = None

    @property
    def status(self) -> str:
        if any(v.status == "mismatch" for v in self.verdicts):
            return "mismatch"
        return "match"

    def verdict(self, check: str) -> VerificationReport:
        for v in self.verdicts:
            if v.check == check:
                return v
        raise KeyError(check)

    def to_dict(self, timings: bool = False) -> dict:
        out = {
            "input": self.input,
            "label": self.label,
            "degree_bound": self.degree_bound,
            "ring": self.ring,
            "status": self.status,
            "stages": self.stages,
            "verdicts": [v.to_dict() for v in self.verdicts],
        }
        if self.error:
            out["error"] = self.error
        if timings:
            out["timings"] = {k: round(v, 6) for k, v in self.timings.items()}
        return out

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(self.to_dict(timings), sort_keys=True, indent=2) + "\n"

    def to_text(self, timings: bool = True) -> str:
        lines = [f"== {self.label} (degree bound {self.degree_bound}, ring {self.ring})"]
        coh = self.stages.get("cohomology")
        if coh:
            lines.append("-- cohomology")
            lines.append("  generators: " + ", ".join(f"{n} ({d})" for n, d in coh["generators"]))
            for r in coh["relations"]:
                lines.append(f"  relation:   {r}")
            if coh["exterior"]:
                lines.append("  exterior:   " + ", ".join(f"{n} ({d})" for n, d in coh["exterior"]))
            if coh["eliminated_linear"]:
                lines.append("  eliminated: " + ", ".join(coh["eliminated_linear"]))
        model = self.stages.get("model")
        if model:
            lines.append("-- minimal model")
            lines.append("  generators: " + ", ".join(f"{n} ({d}, {k})" for n, d, k in model["generators"]))
            for v, dv in model["differential"].items():
                lines.append(f"  d({v}) = {dv}")
            for v, q in model["quadratic_part"].items():
                lines.append(f"  d1({v}) = {q}")
        lie = self.stages.get("lie")
        if lie:
            lines.append("-- homotopy Lie algebra")
            lines.append("  basis: " + ", ".join(f"{n} ({d})" for n, d, _ in lie["basis"]))
            if not lie["brackets"]:
                lines.append("  abelian")
            for x, y, val in lie["brackets"]:
                rhs = " + ".join(f"{_coef(c)}{z}" for z, c in val.items())
                lines.append(f"  [{x},{y}] = {rhs}")
        for key in ("loop", "integral"):
            part = self.stages.get(key)
            if not part:
                continue
            lines.append(f"-- {'loop homology' if key == 'loop' else 'integral loop homology'}")
            lines.append("  generators: " + ", ".join(f"{n} ({d})" for n, d in part["generators"]))
            for r in part["relations"]:
                lines.append(f"  {r} = 0")
            for e in part.get("eliminations", []):
                lines.append(f"  eliminated {e['generator']} = {e['expression']}  since {e['reason']}")
            lines.append("  series: " + ",".join(str(c) for c in part["series"]))
        lines.append("-- verdicts")
        for v in self.verdicts:
            where = f" at degree {v.degree}" if v.degree is not None else ""
            extra = f"  ({v.detail})" if v.detail else ""
            lines.append(f"  {v.check}: {v.status}{where}{extra}")
        if self.error:
            lines.append(f"-- aborted in {self.error['stage']}: {self.error['message']}")
        if timings and self.timings:
            lines.append("-- timings")
            for k, v in self.timings.items():
                lines.append(f"  {k}: {v:.3f}s")
        return "\n".join(lines) + "\n"


def _coef(c: str) -> str:
    num, den = c.split("/")
    if den == "1":
        return "" if num == "1" else f"{num}*"
    return f"({c})*"


def _gens(gens):
    return [[g.name, g.degree] for g in gens]


def _nc_stage(p, N, series):
    return {
        "generators": _gens(p.generators),
        "relations": [str(r) for r in p.relations],
        "eliminations": [
            {"generator": e.generator, "expression": e.expression, "reason": e.reason}
            for e in p.eliminations
        ],
        "series": list(series),
    }


def _custom_reduction(pres: CohomPresentation) -> tuple:
    """Run a hand-written presentation through the Cartan reduction.

    Relations become restricted invariants of their own degree; each exterior
    generator is an invariant restricting to zero.
    """
    inv = [(r, r.degree) for r in pres.relations]
    inv += [(pres.ring.zero(), z.degree + 1) for z in pres.exterior]
    red = cartan_reduce(inv, pres.ring)
    names = []
    taken = {g.name for g in pres.ring.gens} | {z.name for z in pres.exterior}
    fresh = 0
    for src in red.exterior_sources:
        if src >= len(pres.relations):
            names.append(pres.exterior[src - len(pres.relations)].name)
            continue
        fresh += 1
        while f"w{fresh}" in taken:
            fresh += 1
        names.append(f"w{fresh}")
    return red, red.presentation(names)


def _same_ideal(a: CohomPresentation, b: CohomPresentation) -> bool:
    if a.ring != b.ring:
        return False
    if sorted(z.degree for z in a.exterior) != sorted(z.degree for z in b.exterior):
        return False
    if not a.relations or not b.relations:
        return not a.relations and not b.relations
    ga, gb = groebner_basis(a.relations), groebner_basis(b.relations)
    return all(is_member(r, gb) for r in a.relations) and all(is_member(r, ga) for r in b.relations)


def _cohomology_stage(pres, red: CartanReduction, N):
    ring = pres.ring
    return {
        "generators": _gens(ring.gens),
        "relations": [str(r) for r in pres.relations],
        "exterior": _gens(pres.exterior),
        "eliminated_linear": list(red.eliminated_linear),
        "exterior_degrees": list(red.exterior_degrees),
        "presentation": pres.to_text(),
        "series": list(pres.expected_series(N)),
    }


class _Clock:
    def __init__(self, report):
        self.report = report

    def run(self, stage, fn):
        t = time.perf_counter()
        try:
            return fn()
        except PontrjaginError as exc:
            raise StageError(stage, exc) from exc
        finally:
            self.report.timings[stage] = self.report.timings.get(stage, 0.0) + time.perf_counter() - t


def echo(spec) -> str:
    if isinstance(spec, SpaceSpec):
        return " ".join(["space", spec.name] + [f"{k}={v}" for k, v in sorted(spec.params.items())]) + "\n"
    return spec.to_text()


def run_pipeline(spec, degree_bound: int = 20, verify: bool = True, ring: str = "rational",
                 stop_after: str = "loop") -> PipelineReport:
    """Run every stage up to ``stop_after`` on a catalog spec or a presentation."""
    if ring not in RINGS:
        raise ValueError(f"ring must be one of {RINGS}")
    if stop_after not in STAGES:
        raise ValueError(f"stop_after must be one of {STAGES}")
    N = degree_bound
    catalog = isinstance(spec, SpaceSpec)
    label = spec.label if catalog else "custom presentation"
    report = PipelineReport(echo(spec), label, N, ring)
    clock = _Clock(report)
    verdicts = report.verdicts

    # cohomology ------------------------------------------------------------
    def cohomology():
        if catalog:
            red = cartan_reduce(spec.restricted_invariants, spec.cohomology.ring)
            return red, spec.cohomology
        return _custom_reduction(spec)

    try:
        red, pres = clock.run("cohomology", cohomology)
    except StageError as exc:
        if isinstance(exc.cause, NotCartanPairError):
            verdicts.append(VerificationReport("regular sequence", "mismatch", bound=N, detail=str(exc.cause)))
            report.error = {"stage": exc.stage, "message": str(exc.cause)}
            return report
        raise
    report.stages["cohomology"] = _cohomology_stage(pres, red, N)
    if verify:
        def coh_checks():
            ok = is_regular_sequence(pres.relations, pres.ring) if pres.relations else True
            verdicts.append(VerificationReport("regular sequence", "match" if ok else "mismatch", bound=N,
                                               detail=f"relation degrees {pres.relation_degrees()}"))
            if pres.relations:
                gb = groebner_basis(pres.relations)
                counted = monomial_count_series(pres.ring, N, gb.is_standard)
            else:
                counted = monomial_count_series(pres.ring, N)
            counted = counted * free_graded_series(pres.exterior, N)
            verdicts.append(_series_verdict("Groebner count vs complete intersection",
                                            counted, pres.expected_series(N), N))
            if catalog:
                reduced = red.presentation()
                same = _same_ideal(reduced, pres)
                verdicts.append(VerificationReport(
                    "Cartan reduction vs stated cohomology", "match" if same else "mismatch", bound=N,
                    detail=f"reduced relation degrees {reduced.relation_degrees()}, "
                           f"exterior degrees {list(red.exterior_degrees)}"))
        clock.run("cohomology checks", coh_checks)
    if stop_after == "cohomology":
        return _finish(report, verify)

    # model ------------------------------------------------------------------
    m = clock.run("model", lambda: build_formal_model(pres))
    q = quadratic_part(m)
    kinds = [(g, "u") for g in m.u] + [(g, "v") for g in m.v] + [(g, "z") for g in m.z]
    report.stages["model"] = {
        "generators": [[g.name, g.degree, k] for g, k in kinds],
        "differential": {g.name: str(m.differential[g.name]) for g in m.v},
        "quadratic_part": {k: str(v) for k, v in q.items()},
    }
    if stop_after == "model":
        return _finish(report, verify)

    # Lie algebra ---------------------------------------------------------------
    L = clock.run("lie", lambda: homotopy_lie(m))
    report.stages["lie"] = {
        "basis": [[b.name, b.degree, L.dual_of[b.name]] for b in L.basis],
        "brackets": [[x, y, {z: rational_text(c) for z, c in val.items()}]
                     for x, y, val in L.nonzero_brackets()],
    }
    if verify:
        verdicts.append(clock.run("lie checks", lambda: lie_laws(L)))
    if stop_after == "lie":
        return _finish(report, verify)

    # loop homology ------------------------------------------------------------
    U = clock.run("loop", lambda: enveloping(L, name=f"{label} rational"))
    series = clock.run("loop", lambda: U.series(N))
    report.stages["loop"] = _nc_stage(U, N, series)
    if verify:
        def loop_checks():
            rep = verify_presentation(U, pbw_series(L, N), N)
            rep.check = "normal basis vs PBW"
            verdicts.append(rep)
            bad = U.confluence_failures(N)
            degs = [sum(U.generators[i].degree for i in w) for w in bad if w[0] != "relation"]
            verdicts.append(VerificationReport(
                "rewriting confluence", "mismatch" if bad else "match", min(degs, default=None), N,
                detail=f"{len(bad)} unresolved overlaps" if bad else "all overlaps resolve"))
            if catalog:
                verdicts.append(compare_presentations(U, spec.expected_rational, N))
                verdicts.append(splitting_series_check(spec.name, spec.params, N, series=series))
            else:
                verdicts.append(skipped("golden presentation", "custom input has no stated answer"))
                verdicts.append(skipped("torus splitting", "custom input"))
        clock.run("loop checks", loop_checks)

    if ring in ("integral", "both"):
        if catalog and spec.expected_integral is not None:
            P = spec.expected_integral
            iseries = clock.run("integral", lambda: P.series(N))
            report.stages["integral"] = _nc_stage(P, N, iseries)
            if verify:
                verdicts.append(clock.run("integral checks", lambda: rank_compare(P, U, N)))
        elif verify:
            why = "custom input" if not catalog else "; ".join(spec.notes) or "no integral presentation"
            verdicts.append(skipped("integral vs rational ranks", why))
    return _finish(report, verify)


def _series_verdict(check, actual, expected, N):
    bad = actual.first_mismatch(expected)
    return VerificationReport(check, "match" if bad is None else "mismatch", bad, N,
                              list(actual), list(expected))


def _finish(report, verify):
    if not verify:
        report.verdicts.append(skipped("all checks", "verification not requested"))
    return report


__all__ = ["PipelineReport", "run_pipeline", "rational_text", "echo", "STAGES", "RINGS"]
