"""Line-oriented presentation files.

    # SO(8)/T^2 by hand
    generators
      x1, x2 : 2
    relations
      x1^2 + x2^2 + x1*x2
      (x1+x2)^2*x1^2*x2^2
    exterior
      z1 7
      z2 7

or a single catalog reference such as ``space SU_odd n=2``.  ``#`` starts a
comment.  Generator lines are ``name degree`` or ``name, name : degree``.
"""
from __future__ import annotations

import re

from .catalog import SpaceSpec, catalog_space
from .errors import CatalogError, GradingError, PontrjaginError, SpecSemanticError, SpecSyntaxError
from .graded import CohomPresentation, GradedGenerator, PolyRing, parse_polynomial

SECTIONS = ("generators", "relations", "exterior")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_PARAM = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)=(-?\d+)\Z")


def _strip(line: str) -> str:
    return line.split("#", 1)[0].rstrip()


def _column(raw: str, token: str) -> int:
    return raw.find(token) + 1 if token in raw else 1


def _parse_space(raw: str, lineno: int) -> SpaceSpec:
    words = raw.split()
    if len(words) < 2:
        raise SpecSyntaxError("expected 'space NAME [key=value ...]'", lineno, len(raw) + 1)
    params = {}
    for w in words[2:]:
        m = _PARAM.match(w)
        if not m:
            raise SpecSyntaxError(f"bad parameter {w!r}; expected key=integer", lineno, _column(raw, w))
        params[m.group(1)] = int(m.group(2))
    try:
        return catalog_space(words[1], params)
    except CatalogError as exc:
        raise SpecSemanticError(f"line {lineno}: {exc}") from None


def _parse_generators(raw: str, lineno: int) -> list:
    body = raw.strip()
    if ":" in body:
        names_part, deg_part = body.split(":", 1)
        names = [n.strip() for n in names_part.split(",")]
        deg_text = deg_part.strip()
    else:
        parts = body.split()
        if len(parts) != 2:
            raise SpecSyntaxError("expected 'name degree' or 'name, name : degree'", lineno,
                                  _column(raw, body))
        names, deg_text = [parts[0]], parts[1]
    for n in names:
        if not _NAME.match(n):
            raise SpecSyntaxError(f"bad generator name {n!r}", lineno, _column(raw, n) if n else 1)
    if not re.fullmatch(r"\d+", deg_text):
        raise SpecSyntaxError(f"degree must be a positive integer, got {deg_text!r}", lineno,
                              _column(raw, deg_text) if deg_text else len(raw) + 1)
    degree = int(deg_text)
    if degree < 1:
        raise SpecSemanticError(f"line {lineno}: degree of {', '.join(names)} must be at least 1")
    return [(GradedGenerator(n, degree), lineno) for n in names]


def parse_spec(text: str):
    """Return a :class:`SpaceSpec` for ``space`` lines, else a :class:`CohomPresentation`."""
    section = None
    gens, rels, ext = [], [], []
    space = None
    seen_body = False
    for lineno, line in enumerate(text.splitlines(), 1):
        raw = _strip(line)
        if not raw.strip():
            continue
        head = raw.strip()
        if head.split()[0] == "space":
            if seen_body or space is not None:
                raise SpecSemanticError(f"line {lineno}: a 'space' line must be the only declaration")
            space = _parse_space(head, lineno)
            continue
        if space is not None:
            raise SpecSemanticError(f"line {lineno}: a 'space' line must be the only declaration")
        if head in SECTIONS:
            section = head
            seen_body = True
            continue
        if section is None:
            raise SpecSyntaxError(f"expected a section header ({', '.join(SECTIONS)}) or 'space'",
                                  lineno, _column(raw, head))
        if section == "generators":
            gens += _parse_generators(raw, lineno)
        elif section == "exterior":
            ext += _parse_generators(raw, lineno)
        else:
            rels.append((head, lineno, raw.find(head)))
    if space is not None:
        return space
    if not seen_body:
        raise SpecSemanticError("empty specification")

    names = {}
    for g, ln in gens + ext:
        if g.name in names:
            raise SpecSemanticError(f"line {ln}: duplicate generator {g.name!r} (first declared on line {names[g.name]})")
        names[g.name] = ln
    for g, ln in gens:
        if g.is_odd:
            raise SpecSemanticError(f"line {ln}: polynomial generator {g.name!r} needs even degree, got {g.degree}")
    for g, ln in ext:
        if not g.is_odd:
            raise SpecSemanticError(f"line {ln}: exterior generator {g.name!r} needs odd degree, got {g.degree}")
    ring = PolyRing([g for g, _ in gens])
    polys = []
    for body, ln, offset in rels:
        try:
            p = parse_polynomial(body, ring, ln)
        except SpecSyntaxError as exc:
            col = exc.column + offset if exc.column is not None else None
            msg = str(exc).split(": ", 1)[1] if exc.line is not None else str(exc)
            raise SpecSyntaxError(msg, ln, col) from None
        if p.is_zero:
            raise SpecSemanticError(f"line {ln}: relation {body!r} is zero")
        if not p.is_homogeneous():
            raise SpecSemanticError(
                f"line {ln}: relation {body!r} is not homogeneous (degrees {sorted(p.degrees)})"
            )
        polys.append(p)
    try:
        return CohomPresentation(ring, tuple(polys), tuple(g for g, _ in ext))
    except (GradingError, PontrjaginError) as exc:
        raise SpecSemanticError(str(exc)) from None


def load_spec(path):
    with open(path, encoding="utf-8") as fh:
        return parse_spec(fh.read())


__all__ = ["parse_spec", "load_spec"]
