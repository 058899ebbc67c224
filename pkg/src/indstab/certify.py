"""Sign-change separation certificates and verdict replay.

For high degrees Sturm chains get expensive.  A cheaper exact proof uses
numeric roots only as guides: pick rational points between consecutive
approximate roots and check, exactly, that each polynomial changes sign
across every interval assigned to it.  If a polynomial of degree ``d`` shows
``d`` sign changes on disjoint intervals, each interval holds exactly one
simple real root, so the order of all roots is proven.  Whenever the guides
do not yield such a proof the caller falls back to Sturm chains.
"""

from __future__ import annotations

import math
from fractions import Fraction

import gmpy2

import numpy as np

from .aberth import cauchy_radius, find_roots, quick_roots
from .poly import Poly, sign_at
from .stability import (
    Interlacing,
    Mode,
    StabilityVerdict,
    Status,
    _check_pattern,
    _hb_sturm,
    _strip_zero_roots,
    hb_stable,
    is_real_rooted,
    stability_verdict,
)

IMAG_TOL = 1e-9
GRID_POINTS_PER_ROOT = 4
GRID_DOUBLINGS = 5
SIGN_PRECISIONS = (128, 256, 512, 1024, 2048)

Cell = tuple[Fraction, Fraction]


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(x)
    return Fraction(*gmpy2.mpfr(x).as_integer_ratio())


def newton_inequalities_hold(p: Poly) -> bool:
    """Exact necessary condition for real-rootedness of a polynomial with positive coefficients.

    A real-rooted ``sum a_k x^k`` of degree d satisfies
    ``a_k^2 * k * (d-k) >= a_{k-1} * a_{k+1} * (k+1) * (d-k+1)``.
    """
    a, d = p.coeffs, p.degree
    return all(a[k] ** 2 * k * (d - k) >= a[k - 1] * a[k + 1] * (k + 1) * (d - k + 1) for k in range(1, d))


# guides: each finder returns sorted disjoint root cells (lo, hi), or None


def _quick_cells(p: Poly) -> list[Cell] | None:
    z = quick_roots(p.coeffs)
    if z is None or not np.all(np.isfinite(z)):
        return None
    if np.any(np.abs(z.imag) > IMAG_TOL * np.abs(z.real)):
        return None
    return [(r, r) for r in sorted(Fraction(float(v)) for v in z.real)]


def _aberth_cells(p: Poly) -> list[Cell] | None:
    raw = find_roots(p.coeffs)
    if not raw.converged:
        return None
    out = []
    for z in raw.roots:
        z = gmpy2.mpc(z)
        re, im = z.real, z.imag
        if abs(im) > IMAG_TOL * max(abs(re), 1e-300):
            return None
        out.append(_to_fraction(re))
    out.sort()
    return [(r, r) for r in out]


class _SignOracle:
    """Sign of ``p`` at dyadic points using multiprecision Horner with a rounding bound.

    Returns 0 when the sign cannot be resolved at the top precision.  Used
    to locate roots only; proofs re-evaluate signs exactly.
    """

    def __init__(self, p: Poly):
        self.p = p
        self.d = p.degree
        self._coeffs: dict[int, list] = {}

    def _mp_coeffs(self, prec: int):
        if prec not in self._coeffs:
            with gmpy2.context(gmpy2.get_context(), precision=prec):
                self._coeffs[prec] = [gmpy2.mpfr(c) for c in self.p.coeffs]
        return self._coeffs[prec]

    def __call__(self, x: Fraction) -> int:
        for prec in SIGN_PRECISIONS:
            a = self._mp_coeffs(prec)
            with gmpy2.context(gmpy2.get_context(), precision=prec):
                t = gmpy2.mpfr(x.numerator) / x.denominator
                at = abs(t)
                v = a[-1]
                mag = abs(a[-1])
                for c in a[-2::-1]:
                    v = v * t + c
                    mag = mag * at + abs(c)
                bound = mag * (2 * self.d + 4) * gmpy2.mpfr(2) ** (-prec + 1)
                if abs(v) > bound:
                    return 1 if v > 0 else -1
        return 0


def _dyadic(v: float, bits: int = 32) -> Fraction:
    m, e = math.frexp(v)
    return Fraction(round(m * 2**bits)) * Fraction(2) ** (e - bits)


def _root_radius_bounds(p: Poly) -> tuple[float, float]:
    hi = cauchy_radius(p.coeffs) * 1.01
    lo = 1 / (cauchy_radius(p.coeffs[::-1]) * 1.01)
    return lo, hi


def _grid_cells(p: Poly) -> list[Cell] | None:
    """Isolate the roots of a positive-coefficient polynomial on a log grid of the negative axis."""
    d = p.degree
    if d < 1 or any(c <= 0 for c in p.coeffs):
        return None
    sign = _SignOracle(p)
    lo, hi = _root_radius_bounds(p)
    span = math.log(hi) - math.log(lo)
    n = max(8, GRID_POINTS_PER_ROOT * d)
    # grid points in increasing order: from -hi up to -lo
    us = [math.log(hi) - span * j / n for j in range(n + 1)]
    pts = {u: _dyadic(-math.exp(u)) for u in us}
    signs = {u: sign(pts[u]) for u in us}
    for _ in range(GRID_DOUBLINGS + 1):
        ordered = [u for u in us if signs[u] != 0]
        cells = [(pts[u0], pts[u1]) for u0, u1 in zip(ordered, ordered[1:]) if signs[u0] != signs[u1]]
        if len(cells) == d:
            return cells
        mids = [(u0 + u1) / 2 for u0, u1 in zip(us, us[1:])]
        for u in mids:
            pts[u] = _dyadic(-math.exp(u))
            signs[u] = sign(pts[u])
        us = sorted(us + mids, reverse=True)
    return None


def _finders(p: Poly):
    yield _quick_cells
    if p.degree >= 1 and all(c > 0 for c in p.coeffs):
        yield _grid_cells
    yield _aberth_cells


def _cell_finder_chain(p: Poly):
    """Candidate root cells from the cheapest finder whose output has the right count."""
    for finder in _finders(p):
        cells = finder(p)
        if cells is not None and len(cells) == p.degree:
            yield cells


def _paired_cells(odd: Poly, even: Poly):
    """Root cells of both parts from the same finder, cheapest finder first."""
    seen = set()
    for finder in list(_finders(odd)) + list(_finders(even)):
        if finder in seen:
            continue
        seen.add(finder)
        co = finder(odd) if odd.degree > 0 else []
        if co is None or len(co) != odd.degree:
            continue
        ce = finder(even) if even.degree > 0 else []
        if ce is None or len(ce) != even.degree:
            continue
        yield co, ce


def _separators_from_cells(cells: list[Cell], right: Fraction) -> list[Fraction] | None:
    if not cells or cells[-1][1] >= right:
        return None
    first = cells[0][0]
    pts = [first - (1 + abs(first)) if cells[0][0] == cells[0][1] else first]
    for (_, b), (c, _) in zip(cells, cells[1:]):
        if b > c or (b == c and cells[0][0] == cells[0][1]):
            return None
        pts.append(b if b == c else _short_between(b, c))
    last = cells[-1][1]
    pts.append(right if last == cells[-1][0] else last)
    if any(not u < v for u, v in zip(pts, pts[1:])):
        return None
    return pts


def _short_between(a: Fraction, b: Fraction) -> Fraction:
    """A rational with small denominator strictly between a and b."""
    mid = (a + b) / 2
    m = mid.limit_denominator(max(1, int(4 / (b - a)) + 1))
    return m if a < m < b else mid


def _alternates(p: Poly, pts: list[Fraction], idx: list[int]) -> bool:
    """``p`` changes sign across each interval ``(pts[j], pts[j+1])`` for j in idx."""
    cache: dict[int, int] = {}

    def s(j: int) -> int:
        if j not in cache:
            cache[j] = sign_at(p, pts[j])
        return cache[j]

    return all(s(j) * s(j + 1) < 0 for j in idx)


def real_rooted_certificate(p: Poly) -> dict | None:
    """Certificate that ``p`` (with ``p(0) != 0``) has only simple negative real roots."""
    if p[0] == 0 or p.degree < 1:
        return None
    if all(c > 0 for c in p.coeffs) and not newton_inequalities_hold(p):
        return None
    for cells in _cell_finder_chain(p):
        pts = _separators_from_cells(cells, Fraction(0))
        if pts is not None and _alternates(p, pts, list(range(p.degree))):
            return {"method": "real_rooted_separation", "points": [str(t) for t in pts]}
    return None


def _refine_cell(sign: _SignOracle, cell: Cell) -> Cell | None:
    a, b = cell
    sa = sign(a)
    m = (a + b) / 2
    sm = sign(m)
    if sa == 0 or sm == 0:
        return None
    return (a, m) if sa != sm else (m, b)


def _disentangle(merged: list[tuple[Cell, str]], oracles: dict) -> list[tuple[Cell, str]] | None:
    """Shrink overlapping cells of different polynomials until they are disjoint."""
    i = 0
    budget = 200 * max(1, len(merged))
    while i < len(merged) - 1:
        (c0, _), (c1, _) = merged[i], merged[i + 1]
        if c0[1] < c1[0] or (c0[1] == c1[0] and c0[0] < c0[1]):
            i += 1
            continue
        budget -= 1
        if budget < 0:
            return None
        for k in (i, i + 1):
            cell, lab = merged[k]
            if cell[0] == cell[1]:
                return None
            new = _refine_cell(oracles[lab], cell)
            if new is None:
                return None
            merged[k] = (new, lab)
        if merged[i + 1][0] < merged[i][0]:
            merged[i], merged[i + 1] = merged[i + 1], merged[i]
        i = max(i - 1, 0)
    return merged


def _interlacing_proof(odd: Poly, even: Poly):
    """Exact joint isolation of the odd and even parts' roots, or None."""
    if odd[0] == 0 or even[0] == 0:
        return None
    oracles = {"O": _SignOracle(odd), "E": _SignOracle(even)}
    for co, ce in _paired_cells(odd, even):
        merged = sorted([(c, "O") for c in co] + [(c, "E") for c in ce], key=lambda t: (t[0][0], t[0][1]))
        if not merged:
            return None
        merged = _disentangle(merged, oracles)
        if merged is None:
            continue
        labels = "".join(lab for _, lab in merged)
        pts = _separators_from_cells([c for c, _ in merged], Fraction(0))
        if pts is None:
            continue
        if all(_alternates(poly, pts, [j for j, c in enumerate(labels) if c == lab])
               for poly, lab in ((odd, "O"), (even, "E"))):
            return pts, labels
    return None


def _pattern_from_labels(labels: str) -> tuple[Interlacing, int | None]:
    s = [j for j, c in enumerate(labels) if c == "O"]
    t = [j for j, c in enumerate(labels) if c == "E"]
    return _check_pattern(s, t)


def separation_verdict(p: Poly) -> StabilityVerdict | None:
    """Hermite-Biehler verdict proven by separation points; None when no proof is found.

    Needs ``p(0) != 0`` and standard even and odd parts.
    """
    even, odd = p.even_odd()
    if odd.is_zero() or even.lc < 0 or odd.lc < 0:
        return None
    if even.degree not in (odd.degree, odd.degree + 1):
        return None
    proof = _interlacing_proof(odd, even)
    if proof is None:
        return None
    pts, labels = proof
    kind, fail = _pattern_from_labels(labels)
    data = {"method": "separation", "points": [str(t) for t in pts], "labels": labels}
    if kind is Interlacing.NEITHER:
        return StabilityVerdict(Status.NONSTABLE, Mode.EXACT, p, witness={
            "reason": "odd part does not interlace the even part", "position": fail, **data})
    return StabilityVerdict(Status.STABLE, Mode.EXACT, p, certificate={"pattern": kind.value, **data})


# replay


def _check_separation(p: Poly, record: dict, claimed_stable: bool) -> bool:
    pts = [Fraction(t) for t in record["points"]]
    if any(not a < b for a, b in zip(pts, pts[1:])) or pts[-1] > 0:
        return False
    even, odd = p.even_odd()
    labels = record["labels"]
    if len(labels) != len(pts) - 1:
        return False
    if labels.count("E") != even.degree or labels.count("O") != odd.degree:
        return False
    for poly, lab in ((odd, "O"), (even, "E")):
        idx = [j for j, c in enumerate(labels) if c == lab]
        if not _alternates(poly, pts, idx):
            return False
    kind, _ = _pattern_from_labels(labels)
    return (kind is not Interlacing.NEITHER) == claimed_stable


def _check_real_rooted_separation(p: Poly, record: dict) -> bool:
    pts = [Fraction(t) for t in record["points"]]
    if len(pts) != p.degree + 1 or pts[-1] > 0:
        return False
    if any(not a < b for a, b in zip(pts, pts[1:])):
        return False
    return _alternates(p, pts, list(range(p.degree)))


def verify_verdict(record: dict) -> tuple[bool, str]:
    """Recheck a serialized verdict; returns ``(ok, message)``."""
    p = Poly.from_strings(record["polynomial"])
    status = Status(record["status"])
    if Mode(record["mode"]) is Mode.NUMERIC:
        return False, "numeric verdicts are not replayable as proofs"
    payload = record.get("certificate") if status is Status.STABLE else record.get("witness")
    if payload is None:
        return False, "missing certificate or witness"
    method = payload.get("method")
    if method == "real_rooted_separation":
        ok = status is Status.STABLE and _check_real_rooted_separation(p, payload)
        return ok, "sign changes rechecked" if ok else "sign changes do not hold"
    if method == "separation":
        q, _ = _strip_zero_roots(p)
        ok = _check_separation(q, payload, status is Status.STABLE)
        return ok, "interlacing sign changes rechecked" if ok else "interlacing sign changes do not hold"
    if method == "real_rooted":
        ok = status is Status.STABLE and is_real_rooted(p).real_rooted
        return ok, "Sturm chain recomputed" if ok else "Sturm chain shows a defect"
    if method in ("sturm", "trivial", None):
        q, _ = _strip_zero_roots(p)
        again = _hb_sturm(q) if q.degree > 0 else hb_stable(p, fast=False)
        ok = again.status is status
        return ok, "Hermite-Biehler data recomputed" if ok else "recomputed verdict differs"
    return False, f"unknown certificate method {method!r}"


def replay(record: dict) -> StabilityVerdict:
    """Recompute the verdict for a stored polynomial from scratch."""
    p = Poly.from_strings(record["polynomial"])
    if p[0] == 1 and all(c > 0 for c in p.coeffs):
        return stability_verdict(p)
    return hb_stable(p)
