"""File formats: root CSV, JSON records, SVG root plots, and graph ingestion."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence, TextIO
from xml.sax.saxutils import escape

from .graph import Graph, GraphError, build_graph, from_graph6
from .roots import ComplexRootSet

CSV_HEADER = ("graph_id", "re", "im", "residual")
DEFAULT_VIEWPORT = (-3.5, 1.5, -3.0, 3.0)  # re_min, re_max, im_min, im_max
GRAPH6_HEADER = ">>graph6<<"


def _g17(x: float) -> str:
    return format(x, ".17g")


# roots CSV


def root_rows(graph_id: str, rs: ComplexRootSet) -> Iterator[tuple[str, str, str, str]]:
    for z, res in zip(rs.roots, rs.residuals):
        yield graph_id, _g17(z.real), _g17(z.imag), _g17(res)


def write_roots_csv(target: str | Path | TextIO, entries: Iterable[tuple[str, ComplexRootSet]]) -> int:
    """Write one row per root to a path or open stream; returns the row count.

    No entries gives a header-only file.
    """
    if not isinstance(target, (str, Path)):
        return _write_rows(target, entries)
    with open(target, "w", newline="") as fh:
        return _write_rows(fh, entries)


def _write_rows(fh: TextIO, entries: Iterable[tuple[str, ComplexRootSet]]) -> int:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_HEADER)
    count = 0
    for graph_id, rs in entries:
        for row in root_rows(graph_id, rs):
            w.writerow(row)
            count += 1
    return count


@dataclass(frozen=True)
class RootPoint:
    graph_id: str
    z: complex
    residual: float


def read_roots_csv(path: str | Path) -> list[RootPoint]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            return []
        if tuple(header) != CSV_HEADER:
            raise ValueError(f"unexpected CSV header {header}")
        out = []
        for lineno, row in enumerate(reader, start=2):
            if len(row) != 4:
                raise ValueError(f"line {lineno}: expected 4 fields, got {len(row)}")
            out.append(RootPoint(row[0], complex(float(row[1]), float(row[2])), float(row[3])))
    return out


# JSON


def write_json(path: str | Path, obj) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def read_json(path: str | Path):
    return json.loads(Path(path).read_text())


# SVG scatter


def _viewport(points: Sequence[complex], base=DEFAULT_VIEWPORT) -> tuple[float, float, float, float]:
    x0, x1, y0, y1 = base
    for z in points:
        x0, x1 = min(x0, math.floor(z.real - 0.5)), max(x1, math.ceil(z.real + 0.5))
        y0, y1 = min(y0, math.floor(z.imag - 0.5)), max(y1, math.ceil(z.imag + 0.5))
    return x0, x1, y0, y1


def render_svg(points: Sequence[complex], title: str = "", width: int = 600,
               viewport: tuple[float, float, float, float] | None = None) -> str:
    """Scatter plot of complex points with unit gridlines and the imaginary axis.

    The default window grows to whole units whenever a point falls outside it.
    Points with positive real part are drawn in red.
    """
    x0, x1, y0, y1 = viewport or _viewport(points)
    margin = 30
    scale = (width - 2 * margin) / (x1 - x0)
    height = int(round((y1 - y0) * scale)) + 2 * margin

    def sx(x: float) -> float:
        return margin + (x - x0) * scale

    def sy(y: float) -> float:
        return margin + (y1 - y) * scale

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}">',
           f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>']
    if title:
        out.append(f'<text x="{width / 2:.1f}" y="18" text-anchor="middle" font-family="sans-serif" '
                   f'font-size="13">{escape(title)}</text>')
    for gx in range(math.ceil(x0), math.floor(x1) + 1):
        out.append(f'<line class="grid" x1="{sx(gx):.2f}" y1="{sy(y1):.2f}" x2="{sx(gx):.2f}" '
                   f'y2="{sy(y0):.2f}" stroke="#ddd" stroke-width="0.5"/>')
        out.append(f'<text x="{sx(gx):.2f}" y="{sy(y0) + 14:.2f}" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="10">{gx}</text>')
    for gy in range(math.ceil(y0), math.floor(y1) + 1):
        out.append(f'<line class="grid" x1="{sx(x0):.2f}" y1="{sy(gy):.2f}" x2="{sx(x1):.2f}" '
                   f'y2="{sy(gy):.2f}" stroke="#ddd" stroke-width="0.5"/>')
        out.append(f'<text x="{sx(x0) - 4:.2f}" y="{sy(gy) + 3:.2f}" text-anchor="end" '
                   f'font-family="sans-serif" font-size="10">{gy}</text>')
    # real axis, then the imaginary axis drawn heavier
    if y0 <= 0 <= y1:
        out.append(f'<line class="real-axis" x1="{sx(x0):.2f}" y1="{sy(0):.2f}" x2="{sx(x1):.2f}" '
                   f'y2="{sy(0):.2f}" stroke="#888" stroke-width="1"/>')
    if x0 <= 0 <= x1:
        out.append(f'<line class="imaginary-axis" x1="{sx(0):.2f}" y1="{sy(y1):.2f}" x2="{sx(0):.2f}" '
                   f'y2="{sy(y0):.2f}" stroke="black" stroke-width="1.5"/>')
    for z in points:
        colour = "red" if z.real > 0 else "navy"
        out.append(f'<circle cx="{sx(z.real):.2f}" cy="{sy(z.imag):.2f}" r="1.6" fill="{colour}" '
                   f'data-re="{_g17(z.real)}" data-im="{_g17(z.imag)}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(path: str | Path, points: Sequence[complex], title: str = "", **kw) -> None:
    Path(path).write_text(render_svg(points, title, **kw))


# ingestion


class IngestError(ValueError):
    """Unrecoverable input problem such as a corrupted header."""


@dataclass
class IngestLog:
    errors: list[tuple[int, str]] = field(default_factory=list)

    def add(self, lineno: int, msg: str) -> None:
        self.errors.append((lineno, msg))


def _ingest_graph6(lines: Iterable[str], log: IngestLog) -> Iterator[Graph]:
    for lineno, raw in enumerate(lines, start=1):
        s = raw.strip()
        if not s:
            continue
        if s.startswith(">>"):
            if not s.startswith(GRAPH6_HEADER):
                raise IngestError(f"line {lineno}: corrupted graph6 header {s[:12]!r}")
            if lineno != 1:
                raise IngestError(f"line {lineno}: graph6 header after the first line")
            s = s[len(GRAPH6_HEADER):]
            if not s:
                continue
        try:
            yield from_graph6(s)
        except GraphError as exc:
            log.add(lineno, str(exc))


def _ingest_edgelist(lines: Iterable[str], log: IngestLog) -> Iterator[Graph]:
    """Blocks separated by blank lines; each block is ``n`` then ``u v`` edge lines."""
    n: int | None = None
    edges: list[tuple[int, int]] = []
    start = 0

    def flush() -> Iterator[Graph]:
        try:
            yield build_graph(n, edges)
        except GraphError as exc:
            log.add(start, str(exc))

    for lineno, raw in enumerate(lines, start=1):
        s = raw.split("#", 1)[0].strip()
        if not s:
            if raw.strip() == "" and n is not None:
                yield from flush()
                n, edges = None, []
            continue
        if n is None:
            try:
                n = int(s)
            except ValueError:
                raise IngestError(f"line {lineno}: expected a vertex count, got {s!r}") from None
            start = lineno
            continue
        parts = s.split()
        try:
            if len(parts) != 2:
                raise ValueError
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            log.add(lineno, f"bad edge line {s!r}")
    if n is not None:
        yield from flush()


def ingest(path: str | Path, fmt: str = "graph6", log: IngestLog | None = None) -> Iterator[Graph]:
    """Graphs from a file in order.  Bad lines go to ``log``; a bad header raises IngestError."""
    log = log if log is not None else IngestLog()
    if fmt not in ("graph6", "edgelist"):
        raise ValueError(f"unknown format {fmt!r}")
    with open(path) as fh:
        lines = fh.read().splitlines()
    if fmt == "graph6":
        yield from _ingest_graph6(lines, log)
    else:
        yield from _ingest_edgelist(lines, log)
