"""Command line entry point: ``pontrjagin <command> <spec> [options]``."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor

from .catalog import catalog_space, default_cases, list_cases
from .errors import PontrjaginError
from .pipeline import RINGS, run_pipeline
from .specfile import parse_spec

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2

COMMANDS = {
    "cohomology": ("cohomology", False),
    "model": ("model", False),
    "lie": ("lie", False),
    "loop": ("loop", False),
    "verify": ("loop", True),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pontrjagin",
        description="Rational and integral loop-space homology of homogeneous spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (stage, _) in COMMANDS.items():
        p = sub.add_parser(name, help=f"run the pipeline through the {stage} stage"
                           if name != "verify" else "run the full pipeline and every check")
        p.add_argument("spec", nargs="?", help="spec file, '-' for stdin")
        p.add_argument("--degree-bound", type=int, default=20, metavar="N")
        p.add_argument("--ring", choices=RINGS, default="rational")
        p.add_argument("--format", choices=("text", "structured"), default="text")
        p.add_argument("--output", metavar="PATH")
        p.add_argument("--all-catalog", action="store_true",
                       help="run every default catalog case instead of a spec file")
        p.add_argument("--jobs", type=int, default=None, help="worker processes for --all-catalog")
        p.add_argument("--timings", action="store_true",
                       help="include stage timings in structured output (breaks byte stability)")
        p.add_argument("-v", "--verbose", action="store_true")
    cat = sub.add_parser("catalog", help="catalog utilities")
    cat.add_argument("action", choices=("list",))
    cat.add_argument("--format", choices=("text", "structured"), default="text")
    cat.add_argument("--output", metavar="PATH")
    return parser


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _run_case(args):
    name, params, N, verify, ring, stop = args
    return run_pipeline(catalog_space(name, params), N, verify, ring, stop)


def _emit(text: str, output: str | None):
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _catalog_list(args) -> int:
    rows = list_cases()
    if args.format == "structured":
        doc = {"cases": [{"name": n, "params": p, "space": s} for n, p, s in rows]}
        _emit(json.dumps(doc, sort_keys=True, indent=2) + "\n", args.output)
    else:
        _emit("".join(f"{n:<10} {p:<12} {s}\n" for n, p, s in rows), args.output)
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "catalog":
        return _catalog_list(args)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    stage, verify = COMMANDS[args.command]
    if args.degree_bound < 0:
        print("error: --degree-bound must be nonnegative", file=sys.stderr)
        return EXIT_INPUT
    try:
        if args.all_catalog:
            jobs = [(n, p, args.degree_bound, verify, args.ring, stage) for n, p in default_cases()]
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                reports = list(pool.map(_run_case, jobs))  # map keeps input order
        else:
            if not args.spec:
                print("error: a spec file (or --all-catalog) is required", file=sys.stderr)
                return EXIT_INPUT
            spec = parse_spec(_read(args.spec))
            reports = [run_pipeline(spec, args.degree_bound, verify, args.ring, stage)]
    except (PontrjaginError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    if args.format == "structured":
        if len(reports) == 1 and not args.all_catalog:
            text = reports[0].to_json(args.timings)
        else:
            doc = {"reports": [r.to_dict(args.timings) for r in reports]}
            text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    else:
        text = "\n".join(r.to_text() for r in reports)
    _emit(text, args.output)
    return EXIT_MISMATCH if any(r.status == "mismatch" for r in reports) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
