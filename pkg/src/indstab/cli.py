"""Command line entry point: ``indstab <subcommand> ...``."""

from __future__ import annotations

import argparse
import itertools
import json
import logging
import os
import sys
from fractions import Fraction
from pathlib import Path

import tomli

from .aberth import AberthConfig
from .artifacts import (IngestLog, read_roots_csv, write_json, write_roots_csv, write_svg, ingest)
from .certify import verify_verdict
from .enumerate import enumerate_graphs, enumerate_trees
from .graph import FAMILIES, Graph, GraphError, family, from_graph6, parse_edgelist, to_graph6
from .indpoly import indpoly, indpoly_closed
from .poly import Poly
from .roots import all_roots, max_real_part
from .scan import CHECKS, ScanConfig, SearchBudget, SweepSpec, WORKERS_ENV, scan, smallest_nonstable_search, sweep_family
from .stability import stability_verdict

log = logging.getLogger("indstab")

PRECISION_ENV = "INDSTAB_MAX_PRECISION"


# inputs


def load_graph(text: str) -> tuple[str, Graph | None, Poly]:
    """Resolve a graph argument: a file, ``family:p1,p2``, or a graph6 string.

    Returns (label, explicit graph or None, independence polynomial).
    Families too large for an explicit graph use their closed form.
    """
    path = Path(text)
    if path.is_file():
        body = path.read_text()
        first = body.lstrip().splitlines()[0] if body.strip() else ""
        if first.split() and first.split()[0].isdigit():
            g = parse_edgelist(body)
        else:
            g = from_graph6(first)
        return to_graph6(g), g, indpoly(g).poly
    if ":" in text:
        kind, _, params = text.partition(":")
        if kind not in FAMILIES:
            raise SystemExit(f"unknown family {kind!r}; choose from {sorted(FAMILIES)}")
        args = tuple(int(v) for v in params.split(",") if v)
        try:
            g = family(kind, *args)
        except GraphError:
            return text, None, indpoly_closed(kind, *args).poly
        return text, g, indpoly(g).poly
    g = from_graph6(text)
    return text, g, indpoly(g).poly


def load_polynomial(text: str) -> tuple[str, Poly]:
    """A polynomial from a JSON record with "coefficients", a coefficient list, or a graph."""
    path = Path(text)
    if path.is_file() and path.suffix in (".json", ".txt", ".poly"):
        body = path.read_text().strip()
        if body.startswith("{"):
            rec = json.loads(body)
            coeffs = rec.get("coefficients") or rec.get("polynomial")
            return rec.get("graph_id") or path.stem, Poly.from_strings(coeffs)
        if body.startswith("["):
            return path.stem, Poly.from_strings(json.loads(body))
        return path.stem, Poly(Fraction(v) for v in body.replace(",", " ").split())
    if "," in text and ":" not in text:
        return "poly", Poly(Fraction(v) for v in text.split(","))
    label, _, p = load_graph(text)
    return label, p


def _emit(obj, out: str | None) -> None:
    if out:
        write_json(out, obj)
    else:
        json.dump(obj, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")


def _aberth_config(args) -> AberthConfig:
    cfg = AberthConfig()
    if args.max_precision:
        cfg.max_prec = args.max_precision
    return cfg


# subcommands


def cmd_indpoly(args) -> int:
    label, g, p = load_graph(args.graph)
    _emit({"graph_id": label, "n": g.n if g else int(p[1]), "alpha": p.degree,
           "coefficients": p.to_strings()}, args.output)
    return 0


def cmd_stability(args) -> int:
    label, p = load_polynomial(args.target)
    verdict = stability_verdict(p)
    _emit(verdict.to_json(label), args.output)
    return 0 if verdict.stable else 1


def cmd_roots(args) -> int:
    label, p = load_polynomial(args.target)
    rs = all_roots(p, _aberth_config(args))
    write_roots_csv(args.output or sys.stdout, [(label, rs)])
    if args.svg:
        write_svg(args.svg, rs.roots, title=label)
    re, z = max_real_part(rs)
    log.info("max real part %.17g at %s (converged=%s)", re, z, rs.converged)
    return 0


def _scan_common(args, corpus, name: str) -> int:
    checks = tuple(CHECKS) if args.checks == "all" else tuple(c for c in args.checks.split(",") if c)
    config = ScanConfig(workers=args.workers, numeric=args.numeric or bool(args.roots_csv or args.svg),
                        checks=checks, keep_roots=bool(args.roots_csv or args.svg))
    report = scan(corpus, config, name=name,
                  progress=lambda k: log.debug("scanned %d", k))
    if args.roots_csv:
        from .roots import ComplexRootSet

        def entries():
            for rec in report.records:
                if rec.roots:
                    yield rec.graph6, ComplexRootSet(rec.roots, rec.residuals, (0.0,) * len(rec.roots),
                                                     len(rec.roots), 53, True)
        write_roots_csv(args.roots_csv, entries())
    if args.svg:
        pts = [z for rec in report.records for z in rec.roots]
        write_svg(args.svg, pts, title=name)
    _emit(report.to_json(), args.output)
    log.info("%s: %d scanned, %d nonstable, %.1fs", name, report.scanned, report.nonstable, report.wall_time)
    return 0 if report.nonstable == 0 and not report.violations and not report.disagreements else 1


def cmd_scan_graphs(args) -> int:
    corpus = itertools.chain.from_iterable(enumerate_graphs(n) for n in range(args.min_n, args.max_n + 1))
    return _scan_common(args, corpus, f"graphs n={args.min_n}..{args.max_n}")


def cmd_scan_trees(args) -> int:
    corpus = itertools.chain.from_iterable(enumerate_trees(n) for n in range(args.min_n, args.max_n + 1))
    return _scan_common(args, corpus, f"trees n={args.min_n}..{args.max_n}")


def cmd_scan_file(args) -> int:
    ilog = IngestLog()
    graphs = list(ingest(args.path, args.format, ilog))
    for lineno, msg in ilog.errors:
        log.warning("%s:%d: %s", args.path, lineno, msg)
    return _scan_common(args, graphs, str(args.path))


def _parse_range(text: str) -> tuple[int, int]:
    a, sep, b = text.partition("..")
    if not sep:
        return int(a), int(a)
    return int(a), int(b)


def _parse_params(items: list[str]) -> dict:
    out = {}
    for item in items or []:
        key, _, value = item.partition("=")
        out[key] = [int(v) for v in value.split(",")] if key in ("base", "inner") else int(value)
    return out


def cmd_sweep(args) -> int:
    start, stop = _parse_range(args.range)
    spec = SweepSpec(args.family, start, stop, _parse_params(args.param), numeric=not args.exact_only,
                     stop_at_first_nonstable=args.stop_at_first)
    report = sweep_family(spec)
    for e in report.entries:
        log.info("%-18s order=%-5d deg=%-4d %-9s %-10s max_re=%s", e.label, e.order, e.degree, e.status,
                 e.method, "-" if e.max_re is None else f"{e.max_re:.12g}")
    _emit(report.to_json(), args.output)
    return 0


def cmd_search_smallest(args) -> int:
    b = dict(item.split("=", 1) for item in args.budget.split(",") if item) if args.budget else {}
    budget = SearchBudget(
        exhaustive_max_n=int(b.get("exhaustive", 0)),
        join_max_d=int(b.get("join", 0)),
        corona_m=int(b.get("corona", 0)),
        corona_max_n=int(b.get("corona_max_n", 60)),
        time_limit=float(b.get("time", "inf")),
        workers=args.workers,
    )
    _emit(smallest_nonstable_search(budget).to_json(), args.output)
    return 0


def cmd_verify(args) -> int:
    record = json.loads(Path(args.certificate).read_text())
    ok, msg = verify_verdict(record)
    print(("OK: " if ok else "FAILED: ") + msg)
    return 0 if ok else 1


def cmd_plot(args) -> int:
    points = read_roots_csv(args.csv)
    write_svg(args.output, [p.z for p in points], title=args.title or Path(args.csv).stem)
    return 0


# wiring


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    with open(path, "rb") as fh:
        return tomli.load(fh)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="indstab", description="Independence polynomial stability explorer")
    parser.add_argument("--config", help="TOML file with default option values")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("-o", "--output", help="output file (default: stdout)")
        p.add_argument("-v", "--verbose", action="count", default=argparse.SUPPRESS)
        return p

    p = add("indpoly", cmd_indpoly, "independence polynomial of a graph")
    p.add_argument("graph", help="graph6 string, edge-list/graph6 file, or family:params (e.g. star:5)")

    p = add("stability", cmd_stability, "exact stability verdict")
    p.add_argument("target", help="graph, polynomial file, or comma-separated coefficients")

    p = add("roots", cmd_roots, "numeric roots as CSV")
    p.add_argument("target")
    p.add_argument("--svg", help="also write a scatter plot")
    p.add_argument("--max-precision", type=int)

    for name, func in (("scan-graphs", cmd_scan_graphs), ("scan-trees", cmd_scan_trees),
                       ("scan-file", cmd_scan_file)):
        p = add(name, func, f"{name.replace('-', ' ')} with exact verdicts")
        if name == "scan-file":
            p.add_argument("path")
            p.add_argument("--format", choices=("graph6", "edgelist"), default="graph6")
        else:
            p.add_argument("--max-n", type=int, required=True)
            p.add_argument("--min-n", type=int, default=1)
        p.add_argument("--workers", type=int)
        p.add_argument("--numeric", action="store_true", help="also compute roots and max real parts")
        p.add_argument("--checks", default="", help=f"comma list from {','.join(CHECKS)} or 'all'")
        p.add_argument("--roots-csv")
        p.add_argument("--svg")

    p = add("sweep", cmd_sweep, "verdicts along a graph family")
    p.add_argument("--family", required=True)
    p.add_argument("--range", required=True, help="A..B inclusive")
    p.add_argument("--param", action="append", help="key=value, e.g. m=4 or base=1,4,6,4,1")
    p.add_argument("--exact-only", action="store_true")
    p.add_argument("--stop-at-first", action="store_true")

    p = add("search-smallest", cmd_search_smallest, "bounds on the smallest nonstable graph")
    p.add_argument("--budget", default="", help="e.g. exhaustive=7,join=10,corona=4,time=600")
    p.add_argument("--workers", type=int)

    p = add("verify", cmd_verify, "replay a verdict JSON")
    p.add_argument("certificate")

    p = add("plot", cmd_plot, "SVG scatter from a roots CSV")
    p.add_argument("csv")
    p.add_argument("--title")
    return parser


def _apply_defaults(args, config: dict) -> None:
    """Precedence: command-line flag, then environment, then config file."""
    section = {**config, **config.get(args.command, {})}
    if hasattr(args, "workers") and args.workers is None:
        env = os.environ.get(WORKERS_ENV)
        args.workers = int(env) if env else int(section.get("workers", 1))
    if hasattr(args, "max_precision") and args.max_precision is None:
        env = os.environ.get(PRECISION_ENV)
        args.max_precision = int(env) if env else section.get("max_precision")
    if getattr(args, "output", None) is None and args.command == "plot":
        args.output = section.get("output", "roots.svg")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(message)s")
    _apply_defaults(args, _load_config(args.config))
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
