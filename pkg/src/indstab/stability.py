"""Exact Hurwitz quasi-stability decisions.

Everything here is exact over Q.  Sturm chains are kept as primitive
integer polynomials; every stored term is a positive rational multiple of
the textbook term ``f_i = -rem(f_{i-2}, f_{i-1})``, so all sign data agree.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .poly import Poly, exact_quotient, sign_at, squarefree_decomposition

INF = math.inf

# Above this degree the separation certificate is tried before Sturm chains.
FAST_PATH_MIN_DEGREE = 16


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _as_int_primitive(f: Poly) -> Poly:
    if f.is_zero():
        return f
    return f.primitive()[1]


def _prem(a: list[int], b: list[int]) -> tuple[list[int], int]:
    """Integer pseudo-remainder with the positive multiplier ``|lc(b)|``.

    Returns ``(r, e)`` with ``|lc(b)|**e * a == q*b + r``.
    """
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    m = abs(lb)
    s = 1 if lb > 0 else -1
    e = 0
    while len(r) - 1 >= db and r:
        lead = r[-1]
        shift = len(r) - 1 - db
        if m != 1:
            r = [m * c for c in r]
            e += 1
        factor = s * lead
        for j in range(db + 1):
            r[shift + j] -= factor * b[j]
        while r and r[-1] == 0:
            r.pop()
    return r, e


def _content(cs: list[int]) -> int:
    g = 0
    for c in cs:
        g = math.gcd(g, c)
        if g == 1:
            break
    return g


@dataclass(frozen=True)
class SturmSequence:
    """Sturm chain ``f_0 = f, f_1 = f', f_i = -rem(f_{i-2}, f_{i-1})``.

    ``scalars[i]`` is the positive rational with ``chain[i] == scalars[i] * f_i``
    (``None`` when tracking was switched off).  ``complete`` is False when
    construction stopped at the first real-rootedness defect.
    """

    chain: tuple[Poly, ...]
    scalars: tuple[Fraction, ...] | None
    complete: bool = True
    defect: tuple[int, str] | None = None

    def __len__(self) -> int:
        return len(self.chain)

    def signs_at(self, c) -> list[int]:
        if c == INF:
            return [_sign(p.lc) for p in self.chain]
        if c == -INF:
            return [_sign(p.lc) * (-1) ** p.degree for p in self.chain]
        c = Fraction(c)
        return [sign_at(p, c) for p in self.chain]

    def variations(self, c) -> int:
        return sign_variations(self.signs_at(c))

    def degrees(self) -> list[int]:
        return [p.degree for p in self.chain]


def sign_variations(signs: Sequence[int] | SturmSequence, c=None) -> int:
    """Number of sign changes, zeros skipped.  Accepts a sign list, or a chain and a point."""
    if isinstance(signs, SturmSequence):
        return signs.variations(c)
    count = 0
    prev = 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            count += 1
        prev = s
    return count


def sturm_sequence(f: Poly, stop_at_defect: bool = False, track_scalars: bool = True) -> SturmSequence:
    if f.is_zero():
        raise ValueError("the Sturm sequence of the zero polynomial is undefined")
    c0, p0 = f.primitive()
    chain = [p0]
    scalars = [1 / c0] if track_scalars else None
    if f.degree == 0:
        return SturmSequence(tuple(chain), tuple(scalars) if scalars else scalars)
    df = f.derivative()
    c1, p1 = df.primitive()
    chain.append(p1)
    if scalars is not None:
        scalars.append(1 / c1)
    defect = None
    # f' has degree d-1 and the sign of lc(f), so the first check is at index 1
    if p1.lc < 0:
        defect = (1, "negative leading coefficient")
    prev, cur = list(p0.coeffs), list(p1.coeffs)
    while defect is None or not stop_at_defect:
        r, e = _prem(prev, cur)
        if not r:
            break
        r = [-c for c in r]
        g = _content(r)
        r = [c // g for c in r]
        term = Poly(r)
        if scalars is not None:
            scalars.append(Fraction(abs(cur[-1]) ** e, g) * scalars[-2])
        chain.append(term)
        i = len(chain) - 1
        if defect is None:
            if term.degree < chain[i - 1].degree - 1:
                defect = (i, "gap in degree")
            elif term.lc < 0:
                defect = (i, "negative leading coefficient")
        prev, cur = cur, r
    complete = defect is None or not stop_at_defect
    return SturmSequence(tuple(chain), tuple(scalars) if scalars is not None else None, complete, defect)


# real root counting


def _deflate_at(f: Poly, t: Fraction) -> Poly:
    """Remove every factor ``(x - t)`` from ``f``."""
    lin = Poly([-t.numerator, t.denominator])
    while not f.is_zero() and f.degree > 0 and sign_at(f, t) == 0:
        f = exact_quotient(f, lin)
    return f


def count_real_roots(f: Poly, a=-INF, b=INF, seq: SturmSequence | None = None) -> int:
    """Distinct real roots of ``f`` in the open interval ``(a, b)``.

    Finite endpoints that are roots are divided out first, which leaves the
    count on the open interval unchanged.
    """
    if f.is_zero():
        raise ValueError("the zero polynomial has infinitely many roots")
    if not a < b:
        return 0
    g = f
    for t in (a, b):
        if t not in (INF, -INF) and sign_at(g, Fraction(t)) == 0:
            g = _deflate_at(g, Fraction(t))
            seq = None
    if g.degree <= 0:
        return 0
    if seq is None:
        seq = sturm_sequence(g, track_scalars=False)
    return seq.variations(a) - seq.variations(b)


@dataclass(frozen=True)
class RealRootedReport:
    real_rooted: bool
    reason: str
    index: int | None = None
    distinct_real_roots: int | None = None
    squarefree_degree: int | None = None
    sequence: SturmSequence | None = field(default=None, repr=False, compare=False)

    def __bool__(self) -> bool:
        return self.real_rooted

    def to_json(self) -> dict:
        out = {"real_rooted": self.real_rooted, "reason": self.reason, "index": self.index}
        if self.sequence is not None:
            out["chain_degrees"] = self.sequence.degrees()
            out["leading_signs"] = [_sign(p.lc) for p in self.sequence.chain]
        return out


def is_real_rooted(f: Poly, stop_at_defect: bool = True) -> RealRootedReport:
    """Gap / negative-leading-coefficient test on the Sturm chain of ``f``.

    With a complete chain the verdict is cross-checked against
    ``V(-inf) - V(inf) == deg f - deg gcd(f, f')``.
    """
    if f.is_zero():
        return RealRootedReport(True, "zero polynomial")
    if f.lc < 0:
        f = -f
    if f.degree <= 1:
        return RealRootedReport(True, "degree at most one", distinct_real_roots=f.degree,
                                squarefree_degree=f.degree)
    seq = sturm_sequence(f, stop_at_defect=stop_at_defect, track_scalars=False)
    if seq.complete:
        distinct = seq.variations(-INF) - seq.variations(INF)
        sqf_deg = f.degree - seq.chain[-1].degree
        clean = seq.defect is None
        if clean != (distinct == sqf_deg):
            raise AssertionError("Sturm chain defect test disagrees with the root count")
    else:
        distinct = sqf_deg = None
    if seq.defect is None:
        return RealRootedReport(True, "full chain clean", None, distinct, sqf_deg, seq)
    index, kind = seq.defect
    return RealRootedReport(False, kind, index, distinct, sqf_deg, seq)


# isolation


@dataclass(frozen=True)
class RootIsolation:
    intervals: tuple[tuple[Fraction, Fraction], ...]
    multiplicities: tuple[int, ...]
    squarefree_part: Poly
    sequence: SturmSequence = field(repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.intervals)

    def refine(self, width: Fraction) -> "RootIsolation":
        width = Fraction(width)
        out = [_refine(self.sequence, lo, hi, width) for lo, hi in self.intervals]
        return RootIsolation(tuple(out), self.multiplicities, self.squarefree_part, self.sequence)


def _cauchy_bound(p: Poly) -> int:
    lc = abs(Fraction(p.lc))
    return 1 + math.ceil(max(abs(Fraction(c)) / lc for c in p.coeffs[:-1])) if p.degree > 0 else 1


def _split_point(q: Poly, lo: Fraction, hi: Fraction) -> Fraction:
    for k in (Fraction(1, 2), Fraction(3, 7), Fraction(4, 7), Fraction(1, 3), Fraction(2, 3)):
        m = lo + (hi - lo) * k
        if sign_at(q, m) != 0:
            return m
    n = 11
    while True:
        for j in range(1, n):
            m = lo + (hi - lo) * Fraction(j, n)
            if sign_at(q, m) != 0:
                return m
        n = 2 * n + 1


def _refine(seq: SturmSequence, lo: Fraction, hi: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    q = seq.chain[0]
    vlo = seq.variations(lo)
    while hi - lo > width:
        m = _split_point(q, lo, hi)
        vm = seq.variations(m)
        if vlo - vm == 1:
            hi = m
        else:
            lo, vlo = m, vm
    return lo, hi


def isolate_real_roots(f: Poly, lo=None, hi=None) -> RootIsolation:
    """Disjoint open rational intervals, one per distinct real root, in increasing order."""
    if f.is_zero():
        raise ValueError("cannot isolate the roots of the zero polynomial")
    factors = squarefree_decomposition(f)
    q = Poly.const(1)
    for fac, _ in factors:
        q = q * fac
    if q.degree <= 0:
        seq = sturm_sequence(Poly.const(1), track_scalars=False)
        return RootIsolation((), (), q, seq)
    seq = sturm_sequence(q, track_scalars=False)
    bound = _cauchy_bound(q)
    lo = Fraction(-bound) if lo is None else Fraction(lo)
    hi = Fraction(bound) if hi is None else Fraction(hi)
    intervals: list[tuple[Fraction, Fraction]] = []
    stack = [(lo, hi, seq.variations(lo), seq.variations(hi))]
    while stack:
        a, b, va, vb = stack.pop()
        k = va - vb
        if k == 0:
            continue
        if k == 1:
            intervals.append((a, b))
            continue
        m = _split_point(q, a, b)
        vm = seq.variations(m)
        stack.append((m, b, vm, vb))
        stack.append((a, m, va, vm))
    intervals.sort()
    mults = []
    for a, b in intervals:
        mult = 0
        for fac, j in factors:
            if sign_at(fac, a) * sign_at(fac, b) < 0:
                mult += j
        mults.append(mult)
    return RootIsolation(tuple(intervals), tuple(mults), q, seq)


# interlacing


class Interlacing(str, enum.Enum):
    INTERLACES = "interlaces"
    ALTERNATES_LEFT = "alternates_left"
    NEITHER = "neither"


class NotRealRootedError(ValueError):
    pass


@dataclass(frozen=True)
class MergedRoots:
    """Distinct real roots of f*g in increasing order with their multiplicity in f and g."""

    intervals: tuple[tuple[Fraction, Fraction], ...]
    mult_f: tuple[int, ...]
    mult_g: tuple[int, ...]


def merged_root_order(f: Poly, g: Poly) -> MergedRoots:
    fac_f = squarefree_decomposition(f) if not f.is_zero() else []
    fac_g = squarefree_decomposition(g) if not g.is_zero() else []
    prod = Poly.const(1)
    if not f.is_zero():
        prod = prod * f
    if not g.is_zero():
        prod = prod * g
    iso = isolate_real_roots(prod)

    def mult(factors, a, b):
        return sum(j for fac, j in factors if sign_at(fac, a) * sign_at(fac, b) < 0)

    mf = tuple(mult(fac_f, a, b) for a, b in iso.intervals)
    mg = tuple(mult(fac_g, a, b) for a, b in iso.intervals)
    return MergedRoots(iso.intervals, mf, mg)


def _expanded(merged: MergedRoots) -> tuple[list[int], list[int]]:
    """Root ranks (index of the distinct root) listed with multiplicity."""
    s, t = [], []
    for idx, (a, b) in enumerate(zip(merged.mult_f, merged.mult_g)):
        s.extend([idx] * a)
        t.extend([idx] * b)
    return s, t


def _check_pattern(s: list[int], t: list[int]) -> tuple[Interlacing, int | None]:
    """Weak interlacing of root ranks; returns the verdict and the first failing position."""
    if len(t) == len(s) + 1:
        # t1 <= s1 <= t2 <= ... <= s_n <= t_{n+1}
        seq = [x for pair in zip(t, s) for x in pair] + [t[-1]]
        kind = Interlacing.INTERLACES
    elif len(t) == len(s):
        seq = [x for pair in zip(s, t) for x in pair]
        kind = Interlacing.ALTERNATES_LEFT
    else:
        raise ValueError(f"degree pattern ({len(s)}, {len(t)}) fits neither interlacing case")
    for i in range(len(seq) - 1):
        if seq[i] > seq[i + 1]:
            return Interlacing.NEITHER, i
    return kind, None


def interlaces(f: Poly, g: Poly) -> Interlacing:
    """Decide ``f < g`` in the weak sense: INTERLACES when deg g = deg f + 1,
    ALTERNATES_LEFT when the degrees agree, NEITHER when the order fails.

    The zero polynomial precedes everything.
    """
    if f.is_zero():
        return Interlacing.INTERLACES if g.degree == 1 else Interlacing.ALTERNATES_LEFT
    for name, p in (("first", f), ("second", g)):
        if not p.is_zero() and not is_real_rooted(p):
            raise NotRealRootedError(f"the {name} polynomial is not real-rooted")
    if g.is_zero() or g.degree not in (f.degree, f.degree + 1):
        raise ValueError(f"degree pattern ({f.degree}, {g.degree}) fits neither interlacing case")
    s, t = _expanded(merged_root_order(f, g))
    return _check_pattern(s, t)[0]


# verdicts


class Status(str, enum.Enum):
    STABLE = "stable"
    NONSTABLE = "nonstable"


class Mode(str, enum.Enum):
    EXACT = "exact"
    NUMERIC = "numeric"


@dataclass(frozen=True)
class StabilityVerdict:
    status: Status
    mode: Mode
    polynomial: Poly
    certificate: dict | None = None
    witness: dict | None = None

    @property
    def stable(self) -> bool:
        return self.status is Status.STABLE

    def to_json(self, graph_id: str | None = None) -> dict:
        out = {
            "status": self.status.value,
            "mode": self.mode.value,
            "polynomial": self.polynomial.to_strings(),
        }
        if self.certificate is not None:
            out["certificate"] = self.certificate
        if self.witness is not None:
            out["witness"] = self.witness
        if graph_id is not None:
            out["graph_id"] = graph_id
        return out


def _fr(x: Fraction) -> str:
    return str(Fraction(x))


def _intervals_json(intervals) -> list[list[str]]:
    return [[_fr(a), _fr(b)] for a, b in intervals]


def _strip_zero_roots(p: Poly) -> tuple[Poly, int]:
    k = 0
    while k < len(p.coeffs) and p.coeffs[k] == 0:
        k += 1
    return p.shift(-k), k


def _hb_sturm(p: Poly) -> StabilityVerdict:
    even, odd = p.even_odd()
    for name, part in (("even", even), ("odd", odd)):
        if not part.is_zero() and part.lc < 0:
            return StabilityVerdict(Status.NONSTABLE, Mode.EXACT, p,
                                    witness={"reason": f"{name} part is not standard"})
    reports = {}
    for name, part in (("even", even), ("odd", odd)):
        rep = is_real_rooted(part)
        reports[name] = rep.to_json()
        if not rep:
            return StabilityVerdict(Status.NONSTABLE, Mode.EXACT, p, witness={
                "reason": f"{name} part is not real-rooted", "method": "sturm", "defect": rep.to_json()})
    for name, part in (("even", even), ("odd", odd)):
        if part.degree > 0 and count_real_roots(part, 0, INF) > 0:
            return StabilityVerdict(Status.NONSTABLE, Mode.EXACT, p, witness={
                "reason": f"{name} part has a positive root", "method": "sturm"})
    if odd.is_zero():
        return StabilityVerdict(Status.STABLE, Mode.EXACT, p, certificate={
            "method": "sturm", "even": reports["even"], "odd": reports["odd"], "order": "odd part is zero"})
    if even.degree not in (odd.degree, odd.degree + 1):
        return StabilityVerdict(Status.NONSTABLE, Mode.EXACT, p, witness={
            "reason": "degrees of the even and odd parts fit neither interlacing case",
            "degrees": [even.degree, odd.degree]})
    merged = merged_root_order(odd, even)
    s, t = _expanded(merged)
    kind, fail = _check_pattern(s, t)
    order = {
        "intervals": _intervals_json(merged.intervals),
        "mult_odd": list(merged.mult_f),
        "mult_even": list(merged.mult_g),
    }
    if kind is Interlacing.NEITHER:
        return StabilityVerdict(Status.NONSTABLE, Mode.EXACT, p, witness={
            "reason": "odd part does not interlace the even part", "method": "sturm",
            "position": fail, **order})
    return StabilityVerdict(Status.STABLE, Mode.EXACT, p, certificate={
        "method": "sturm", "pattern": kind.value, "even": reports["even"], "odd": reports["odd"], **order})


def _shape_error(p: Poly) -> str | None:
    if p.is_zero():
        return "zero polynomial"
    if p.lc < 0:
        return "polynomial is not standard"
    return None


def hb_stable(p: Poly, fast: bool = True) -> StabilityVerdict:
    """Hermite-Biehler verdict for a standard polynomial (closed left half-plane)."""
    err = _shape_error(p)
    if err:
        raise ValueError(err)
    q, zeros = _strip_zero_roots(p)
    if q.degree == 0:
        return StabilityVerdict(Status.STABLE, Mode.EXACT, p, certificate={"method": "trivial", "zero_roots": zeros})
    if fast and q.degree >= FAST_PATH_MIN_DEGREE:
        from .certify import separation_verdict

        v = separation_verdict(q)
        if v is not None:
            return StabilityVerdict(v.status, v.mode, p, v.certificate, v.witness)
    v = _hb_sturm(q)
    return StabilityVerdict(v.status, v.mode, p, v.certificate, v.witness)


def stability_verdict(p: Poly, fast: bool = True) -> StabilityVerdict:
    """Exact verdict for an independence polynomial: real-rooted shortcut, then Hermite-Biehler."""
    if p.is_zero() or p[0] != 1 or any(c <= 0 for c in p.coeffs):
        raise ValueError("expected positive coefficients with constant term 1")
    if fast and p.degree >= FAST_PATH_MIN_DEGREE:
        from .certify import real_rooted_certificate

        cert = real_rooted_certificate(p)
        if cert is not None:
            return StabilityVerdict(Status.STABLE, Mode.EXACT, p, certificate=cert)
        return hb_stable(p, fast=True)
    rep = is_real_rooted(p)
    if rep:
        return StabilityVerdict(Status.STABLE, Mode.EXACT, p, certificate={
            "method": "real_rooted", "report": rep.to_json()})
    return hb_stable(p, fast=fast)
