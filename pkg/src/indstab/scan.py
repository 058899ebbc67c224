"""Corpus scans, family sweeps and the smallest-nonstable bound search."""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import islice, repeat
from typing import Callable, Iterable, Iterator, Sequence

from .graph import (MAX_VERTICES, Graph, complete, corona_edge_list, edge_list_is_tree, empty, family,
                    from_graph6, independence_number, is_claw_free, join, to_graph6)
from .indpoly import (ONE, X, _path_poly, balanced_multipartite_poly, forest_indpoly, graph_star_poly,
                      indpoly, indpoly_corona, indpoly_kstar, indpoly_lex, star_poly,
                      triangular_multipartite_poly)
from .poly import Poly
from .roots import ComplexRootSet, all_roots, find_min_join_clique_m, max_real_part, mobius_disk_check
from .stability import Status, StabilityVerdict, is_real_rooted, stability_verdict

AGREEMENT_MARGIN = 1e-8
WORKERS_ENV = "INDSTAB_WORKERS"
CHECKS = ("coefficients", "alpha", "turan", "claw_free", "real_rooted_stable", "smallest_root_real",
          "mobius", "agreement")
NUMERIC_CHECKS = {"smallest_root_real", "mobius", "agreement"}


def default_workers() -> int:
    return max(1, int(os.environ.get(WORKERS_ENV, "1")))


class ScanError(RuntimeError):
    pass


@dataclass(frozen=True)
class ScanConfig:
    workers: int = 1
    numeric: bool = False
    checks: tuple[str, ...] = ()
    keep_roots: bool = False
    chunk_size: int = 32

    def __post_init__(self):
        bad = set(self.checks) - set(CHECKS)
        if bad:
            raise ValueError(f"unknown checks {sorted(bad)}")
        if self.workers < 1 or self.chunk_size < 1:
            raise ValueError("workers and chunk_size must be positive")

    @property
    def needs_roots(self) -> bool:
        return self.numeric or self.keep_roots or bool(NUMERIC_CHECKS & set(self.checks))


@dataclass(frozen=True)
class GraphRecord:
    index: int
    graph6: str
    n: int
    coefficients: tuple[int, ...]
    status: str
    method: str
    verdict: dict
    max_re: float | None
    violations: tuple[str, ...]
    roots: tuple[complex, ...] = ()
    residuals: tuple[float, ...] = ()


@dataclass
class ScanReport:
    corpus: str
    scanned: int = 0
    stable: int = 0
    nonstable: int = 0
    nonstable_entries: list[dict] = field(default_factory=list)
    max_re_by_order: dict[int, float] = field(default_factory=dict)
    disagreements: list[str] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)
    records: list[GraphRecord] = field(default_factory=list)
    wall_time: float = 0.0

    def add(self, rec: GraphRecord) -> None:
        self.scanned += 1
        if rec.status == Status.STABLE.value:
            self.stable += 1
        else:
            self.nonstable += 1
            self.nonstable_entries.append({"graph6": rec.graph6, "verdict": rec.verdict})
        if rec.max_re is not None:
            prev = self.max_re_by_order.get(rec.n)
            if prev is None or rec.max_re > prev:
                self.max_re_by_order[rec.n] = rec.max_re
        for v in rec.violations:
            (self.disagreements if v.startswith("agreement") else self.violations).append(v)

    def summary(self) -> dict:
        """Everything except timing and per-graph records; equal across worker counts."""
        return {
            "corpus": self.corpus,
            "scanned": self.scanned,
            "stable": self.stable,
            "nonstable": self.nonstable,
            "nonstable_entries": self.nonstable_entries,
            "max_re_by_order": {str(k): v for k, v in sorted(self.max_re_by_order.items())},
            "disagreements": self.disagreements,
            "violations": self.violations,
        }

    def to_json(self) -> dict:
        return {**self.summary(), "wall_time": self.wall_time}


# per-graph work


def numeric_agrees(status: Status | str, max_re: float, margin: float = AGREEMENT_MARGIN) -> bool:
    """Exact and numeric verdicts are consistent unless the max real part is clearly on the wrong side."""
    stable = Status(status) == Status.STABLE
    return max_re <= margin if stable else max_re >= -margin


def _smallest_root_is_real(rs: ComplexRootSet, tol: float = 1e-9) -> bool:
    rmin = min(abs(z) for z in rs.roots)
    return any(abs(z.imag) <= tol * max(1.0, abs(z)) and abs(z) <= rmin * (1 + 1e-9) + tol
               for z in rs.roots)


def _check_graph(g: Graph, p: Poly, verdict: StabilityVerdict, rs: ComplexRootSet | None,
                 checks: Sequence[str]) -> list[str]:
    bad = []
    n = g.n
    c = [p[k] for k in range(4)]
    if "coefficients" in checks:
        ok = c[0] == 1 and c[1] == n and c[2] == n * (n - 1) // 2 - g.num_edges and n * c[2] >= c[3]
        if not ok:
            bad.append("coefficients")
    if "alpha" in checks and p.degree != independence_number(g):
        bad.append("alpha")
    if "turan" in checks and p.degree == 2 and 4 * c[2] > n * n:
        bad.append("turan")
    real_rooted = None
    if "claw_free" in checks and is_claw_free(g):
        real_rooted = bool(is_real_rooted(p))
        if not real_rooted:
            bad.append("claw_free")
    if "real_rooted_stable" in checks:
        if real_rooted is None:
            real_rooted = bool(is_real_rooted(p))
        if real_rooted and not verdict.stable:
            bad.append("real_rooted_stable")
    if rs is not None and p.degree >= 1:
        if "smallest_root_real" in checks and not _smallest_root_is_real(rs):
            bad.append("smallest_root_real")
        if "mobius" in checks and mobius_disk_check(rs) and not stability_verdict(graph_star_poly(p, n)).stable:
            bad.append("mobius")
        if "agreement" in checks and not numeric_agrees(verdict.status, max_real_part(rs)[0]):
            bad.append("agreement")
    return bad


_VERDICTS: dict[tuple[int, ...], StabilityVerdict] = {}
_ROOTS: dict[tuple[int, ...], ComplexRootSet] = {}


def _cached_verdict(p: Poly) -> StabilityVerdict:
    key = tuple(p.coeffs)
    v = _VERDICTS.get(key)
    if v is None:
        v = _VERDICTS[key] = stability_verdict(p)
    return v


def _cached_roots(p: Poly) -> ComplexRootSet:
    key = tuple(p.coeffs)
    rs = _ROOTS.get(key)
    if rs is None:
        rs = _ROOTS[key] = all_roots(p)
    return rs


def process_graph(index: int, g6: str, config: ScanConfig) -> GraphRecord:
    g = from_graph6(g6)
    p = indpoly(g).poly
    verdict = _cached_verdict(p)
    rs = _cached_roots(p) if config.needs_roots and p.degree >= 1 else None
    max_re = max_real_part(rs)[0] if rs is not None else None
    bad = _check_graph(g, p, verdict, rs, config.checks)
    return GraphRecord(
        index=index,
        graph6=g6,
        n=g.n,
        coefficients=tuple(int(c) for c in p.coeffs),
        status=verdict.status.value,
        method=(verdict.certificate or verdict.witness or {}).get("method", ""),
        verdict=verdict.to_json(g6),
        max_re=max_re,
        violations=tuple(f"{name}: {g6}" for name in bad),
        roots=rs.roots if (rs is not None and config.keep_roots) else (),
        residuals=rs.residuals if (rs is not None and config.keep_roots) else (),
    )


def _process_chunk(chunk: list[tuple[int, str]], config: ScanConfig) -> list[GraphRecord]:
    out = []
    for index, g6 in chunk:
        try:
            out.append(process_graph(index, g6, config))
        except Exception as exc:
            raise ScanError(f"graph {index} ({g6}): {type(exc).__name__}: {exc}") from exc
    return out


def _chunks(items: Iterable[tuple[int, str]], size: int) -> Iterator[list[tuple[int, str]]]:
    it = iter(items)
    while chunk := list(islice(it, size)):
        yield chunk


def scan(corpus: Iterable[Graph], config: ScanConfig | None = None, name: str = "corpus",
         progress: Callable[[int], None] | None = None) -> ScanReport:
    """Exact verdict (plus optional numeric roots and property checks) for every graph.

    Results are merged in corpus order, so the report does not depend on the
    number of workers.
    """
    config = config or ScanConfig()
    report = ScanReport(corpus=name)
    start = time.perf_counter()
    items = ((i, to_graph6(g)) for i, g in enumerate(corpus))
    chunks = _chunks(items, config.chunk_size)
    if config.workers == 1:
        results = (_process_chunk(c, config) for c in chunks)
        _collect(report, results, config, progress)
    else:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = pool.map(_process_chunk, chunks, repeat(config))
            _collect(report, results, config, progress)
    report.wall_time = time.perf_counter() - start
    return report


def _collect(report: ScanReport, results, config: ScanConfig, progress) -> None:
    for batch in results:
        for rec in batch:
            report.add(rec)
            if config.keep_roots:
                report.records.append(rec)
        if progress is not None:
            progress(report.scanned)


# family sweeps

SWEEP_FAMILIES = ("triangular_multipartite", "star", "balanced_multipartite", "join_clique",
                  "corona_star_tree", "lex_path", "kstar")
PARAMETER_CAP = 10_000


@dataclass(frozen=True)
class SweepSpec:
    """A one-parameter family and the parameter range ``start..stop`` (inclusive).

    ``params`` by family: balanced_multipartite takes ``k``; join_clique and
    kstar take ``base`` (coefficients of i(G)) and kstar also ``order``;
    corona_star_tree takes ``m``; lex_path takes ``inner`` (coefficients of i(H)).
    """

    family: str
    start: int
    stop: int
    params: dict = field(default_factory=dict)
    numeric: bool = True
    explicit_check: bool = True
    stop_at_first_nonstable: bool = False

    def __post_init__(self):
        if self.family not in SWEEP_FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {SWEEP_FAMILIES}")
        if self.start > self.stop:
            raise ValueError("empty parameter range")
        if self.start < 0 or self.stop > PARAMETER_CAP:
            raise ValueError(f"parameters must lie in 0..{PARAMETER_CAP}")
        need = {"balanced_multipartite": ("k",), "join_clique": ("base",), "kstar": ("base", "order"),
                "corona_star_tree": ("m",), "lex_path": ("inner",)}.get(self.family, ())
        missing = [k for k in need if k not in self.params]
        if missing:
            raise ValueError(f"family {self.family} needs params {missing}")


@dataclass
class SweepEntry:
    param: int
    label: str
    order: int
    degree: int
    status: str | None
    method: str
    max_re: float | None
    witness_root: complex | None
    seconds: float
    verdict: dict | None = None
    explicit_agrees: bool | None = None
    witness_is_tree: bool | None = None
    error: str | None = None


@dataclass
class SweepReport:
    spec: SweepSpec
    entries: list[SweepEntry] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def stable(self) -> int:
        return sum(e.status == Status.STABLE.value for e in self.entries)

    @property
    def nonstable(self) -> int:
        return sum(e.status == Status.NONSTABLE.value for e in self.entries)

    @property
    def first_nonstable(self) -> SweepEntry | None:
        return next((e for e in self.entries if e.status == Status.NONSTABLE.value), None)

    def to_json(self) -> dict:
        def entry(e: SweepEntry) -> dict:
            d = asdict(e)
            d["witness_root"] = None if e.witness_root is None else [e.witness_root.real, e.witness_root.imag]
            return d

        return {"spec": asdict(self.spec), "stable": self.stable, "nonstable": self.nonstable,
                "entries": [entry(e) for e in self.entries], "wall_time": self.wall_time}


def _member(spec: SweepSpec, t: int) -> tuple[str, int, Poly, Graph | None, tuple | None]:
    """(label, order, polynomial, explicit graph or None, edge-list tree or None) for parameter t."""
    prm = spec.params
    fam = spec.family
    if fam == "triangular_multipartite":
        order = t * (t + 1) // 2
        g = family("triangular_multipartite", t) if order <= MAX_VERTICES else None
        return f"K_1..{t}", order, triangular_multipartite_poly(t), g, None
    if fam == "star":
        g = family("star", t) if t + 1 <= MAX_VERTICES else None
        return f"K_1,{t}", t + 1, star_poly(t), g, None
    if fam == "balanced_multipartite":
        k = prm["k"]
        g = family("balanced_multipartite", k, t) if k * t <= MAX_VERTICES else None
        return f"K_{k}x{t}", k * t, balanced_multipartite_poly(k, t), g, None
    if fam == "join_clique":
        base = Poly(prm["base"])
        n = base[1]
        return f"G+K_{t}", n + t, base + t * X, None, None
    if fam == "corona_star_tree":
        m = prm["m"]
        order, edges = corona_edge_list(t + 1, [(0, i) for i in range(1, t + 1)], m, [])
        return (f"K_1,{t} o E_{m}", order, indpoly_corona(star_poly(t), (ONE + X) ** m, t + 1), None,
                (order, edges))
    if fam == "lex_path":
        inner = Poly(prm["inner"])
        return f"P_{t}[H]", t * inner[1], indpoly_lex(_path_poly(t), inner), None, None
    base = Poly(prm["base"])
    n = prm["order"]
    return f"G^{t}*", n * 2 ** t, indpoly_kstar(base, n, t), None, None


def sweep_family(spec: SweepSpec) -> SweepReport:
    """Exact verdict for every parameter value, from closed forms and identities."""
    report = SweepReport(spec)
    start = time.perf_counter()
    for t in range(spec.start, spec.stop + 1):
        t0 = time.perf_counter()
        try:
            label, order, p, g, tree = _member(spec, t)
            verdict = stability_verdict(p)
            entry = SweepEntry(t, label, order, p.degree, verdict.status.value,
                               (verdict.certificate or verdict.witness or {}).get("method", ""),
                               None, None, 0.0, verdict.to_json(label))
            if spec.numeric and p.degree >= 1:
                entry.max_re, entry.witness_root = max_real_part(all_roots(p))
            if spec.explicit_check and g is not None:
                entry.explicit_agrees = indpoly(g).poly == p
            if tree is not None and not verdict.stable:
                n_tree, edges = tree
                entry.witness_is_tree = edge_list_is_tree(n_tree, edges) and forest_indpoly(n_tree, edges) == p
        except (ValueError, ArithmeticError, RuntimeError) as exc:
            entry = SweepEntry(t, spec.family, 0, 0, None, "", None, None, 0.0, error=f"{type(exc).__name__}: {exc}")
        entry.seconds = time.perf_counter() - t0
        report.entries.append(entry)
        if spec.stop_at_first_nonstable and entry.status == Status.NONSTABLE.value:
            break
    report.wall_time = time.perf_counter() - start
    return report


# smallest nonstable graph: bounds


@dataclass(frozen=True)
class SearchBudget:
    """Limits for the bound search; all zeros gives an empty report."""

    exhaustive_max_n: int = 0
    join_max_d: int = 0
    join_cap: int = 5000
    corona_m: int = 0
    corona_max_n: int = 60
    time_limit: float = math.inf
    workers: int = 1


@dataclass
class Candidate:
    construction: str
    order: int
    polynomial: list[str]
    witness_root: complex | None
    graph6: str | None = None


@dataclass
class BoundReport:
    lower_bound: int | None = None
    lower_source: str = "unknown"
    upper_bound: int | None = None
    best: Candidate | None = None
    candidates: list[Candidate] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    budget_exhausted: bool = False
    wall_time: float = 0.0

    def offer(self, cand: Candidate) -> None:
        self.candidates.append(cand)
        if self.upper_bound is None or cand.order < self.upper_bound:
            self.upper_bound = cand.order
            self.best = cand

    def to_json(self) -> dict:
        def cj(c: Candidate | None):
            if c is None:
                return None
            d = asdict(c)
            d["witness_root"] = None if c.witness_root is None else [c.witness_root.real, c.witness_root.imag]
            return d

        return {
            "lower_bound": self.lower_bound if self.lower_bound is not None else "unknown",
            "lower_source": self.lower_source,
            "upper_bound": self.upper_bound if self.upper_bound is not None else "unknown",
            "best": cj(self.best),
            "candidates": [cj(c) for c in self.candidates],
            "notes": self.notes,
            "budget_exhausted": self.budget_exhausted,
            "wall_time": self.wall_time,
        }


def smallest_nonstable_search(budget: SearchBudget) -> BoundReport:
    """Lower bound from exhaustive scans, upper bound from explicit nonstable constructions.

    The bounds bracket the order of the smallest nonstable graph; nothing
    here claims the upper bound is optimal.
    """
    from .enumerate import enumerate_graphs

    report = BoundReport()
    start = time.perf_counter()

    def out_of_time() -> bool:
        if time.perf_counter() - start > budget.time_limit:
            report.budget_exhausted = True
            return True
        return False

    config = ScanConfig(workers=budget.workers)
    for n in range(1, budget.exhaustive_max_n + 1):
        if out_of_time():
            break
        rep = scan(enumerate_graphs(n), config, name=f"graphs n={n}")
        if rep.nonstable:
            g6 = rep.nonstable_entries[0]["graph6"]
            p = indpoly(from_graph6(g6)).poly
            report.offer(Candidate(f"exhaustive n={n}", n, p.to_strings(), None, g6))
            report.notes.append(f"exhaustive scan found a nonstable graph on {n} vertices")
            break
        report.lower_bound, report.lower_source = n + 1, f"exhaustive scan clean for n <= {n}"

    for d in range(2, budget.join_max_d + 1):
        if out_of_time():
            break
        res = find_min_join_clique_m((ONE + X) ** d, 0.0, budget.join_cap)
        if not res.found:
            report.notes.append(f"E_{d} + K_m stable for all m <= {budget.join_cap}")
            continue
        m = res.m
        p = (ONE + X) ** d + m * X
        g6 = None
        if d + m <= MAX_VERTICES:
            g = join(empty(d), complete(m))
            if indpoly(g).poly != p:
                raise AssertionError("join identity disagrees with the explicit graph")
            g6 = to_graph6(g)
        report.offer(Candidate(f"E_{d} + K_{m}", d + m, p.to_strings(), res.witness, g6))

    if budget.corona_m and not out_of_time():
        sweep = sweep_family(SweepSpec("corona_star_tree", 1, budget.corona_max_n, {"m": budget.corona_m},
                                       numeric=True, stop_at_first_nonstable=True))
        hit = sweep.first_nonstable
        if hit is not None:
            p = indpoly_corona(star_poly(hit.param), (ONE + X) ** budget.corona_m, hit.param + 1)
            report.offer(Candidate(hit.label, hit.order, p.to_strings(), hit.witness_root))
        else:
            report.notes.append(f"no nonstable corona tree with n <= {budget.corona_max_n}")
    report.wall_time = time.perf_counter() - start
    return report
