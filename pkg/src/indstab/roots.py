"""Numeric independence roots, region checks and the searches built on them."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import gmpy2
import mpmath

from .aberth import AberthConfig, find_roots
from .poly import Poly, squarefree_decomposition
from .stability import StabilityVerdict, hb_stable

DEGREE_CAP = 2000
CLUSTER_TOL = 1e-8
RESIDUAL_TOL = 1e-12
MODULAR_PRIME = (1 << 61) - 1


class RootFindingError(RuntimeError):
    pass


@dataclass(frozen=True)
class ComplexRootSet:
    """Roots listed with multiplicity (``len(roots) == degree``).

    ``residuals`` are relative backward errors ``|q(z)| / sum |q_k| |z|^k`` on
    the squarefree factor ``q`` the root came from; ``radii`` bound the
    distance to a true root by ``deg(q) * |q(z)/q'(z)|``.
    """

    roots: tuple[complex, ...]
    residuals: tuple[float, ...]
    radii: tuple[float, ...]
    degree: int
    precision_bits: int
    converged: bool
    clusters: tuple[tuple[complex, int], ...] = field(default=())
    precise_roots: tuple = field(default=(), repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.roots)


def is_squarefree_modular(p: Poly, prime: int = MODULAR_PRIME) -> bool:
    """True proves ``p`` squarefree over Q; False is inconclusive."""
    if not p.is_integral() or p.degree < 1:
        return False
    d = p.degree
    if p.lc % prime == 0 or (d * p.lc) % prime == 0:
        return False
    a = [c % prime for c in p.coeffs]
    b = [(k * c) % prime for k, c in enumerate(p.coeffs)][1:]

    def trim(v):
        while v and v[-1] == 0:
            v.pop()
        return v

    a, b = trim(a), trim(b)
    while b:
        inv = pow(b[-1], -1, prime)
        while len(a) >= len(b):
            f = a[-1] * inv % prime
            off = len(a) - len(b)
            for j, c in enumerate(b):
                a[off + j] = (a[off + j] - f * c) % prime
            trim(a)
        a, b = b, a
    return len(a) == 1


def _squarefree_factors(p: Poly) -> list[tuple[Poly, int]]:
    if is_squarefree_modular(p):
        return [(p, 1)]
    return squarefree_decomposition(p)


def _residual_and_radius(coeffs: Sequence, z, prec: int) -> tuple[float, float]:
    d = len(coeffs) - 1
    with gmpy2.context(gmpy2.get_context(), precision=prec):
        zc = gmpy2.mpc(z)
        az = abs(zc)
        v = gmpy2.mpc(0)
        dv = gmpy2.mpc(0)
        mag = gmpy2.mpfr(0)
        for c in reversed(coeffs):
            dv = dv * zc + v
            v = v * zc + c
            mag = mag * az + abs(c)
        res = float(abs(v) / mag) if mag else 0.0
        rad = float(d * abs(v) / abs(dv)) if dv != 0 else math.inf
    return res, rad


def all_roots(p: Poly, config: AberthConfig | None = None) -> ComplexRootSet:
    """All complex roots with multiplicity, via squarefree factors and the Aberth solver."""
    if p.degree < 1:
        raise ValueError("need a polynomial of degree at least 1")
    if p.degree > DEGREE_CAP:
        raise ValueError(f"degree {p.degree} exceeds the numeric cap {DEGREE_CAP}")
    if not p.is_integral():
        p = p.primitive()[1]
    roots, residuals, radii, precise, clusters = [], [], [], [], []
    converged = True
    bits = 53
    for factor, mult in _squarefree_factors(p):
        raw = find_roots(factor.coeffs, config)
        converged &= raw.converged
        bits = max(bits, raw.prec)
        eval_prec = max(2 * raw.prec, 128)
        for z in raw.roots:
            res, rad = _residual_and_radius(factor.coeffs, z, eval_prec)
            zc = complex(z)
            clusters.append((zc, mult))
            for _ in range(mult):
                roots.append(zc)
                residuals.append(res)
                radii.append(rad)
                precise.append(z)
    converged &= all(r <= RESIDUAL_TOL for r in residuals)
    merged = _merge_clusters(clusters)
    return ComplexRootSet(tuple(roots), tuple(residuals), tuple(radii), p.degree, bits,
                          converged, tuple(merged), tuple(precise))


def _merge_clusters(clusters: list[tuple[complex, int]]) -> list[tuple[complex, int]]:
    """Group numerically coincident roots (within ``CLUSTER_TOL``, relative)."""
    out: list[list] = []
    for z, m in sorted(clusters, key=lambda t: (t[0].real, t[0].imag)):
        for entry in out:
            if abs(entry[0] - z) <= CLUSTER_TOL * max(1.0, abs(z)):
                total = entry[1] + m
                entry[0] = (entry[0] * entry[1] + z * m) / total
                entry[1] = total
                break
        else:
            out.append([z, m])
    return [(z, m) for z, m in out]


def _require_converged(rs: ComplexRootSet) -> None:
    if not rs.converged:
        raise RootFindingError("root set did not converge")


def max_real_part(rs: ComplexRootSet) -> tuple[float, complex]:
    _require_converged(rs)
    i = max(range(len(rs.roots)), key=lambda k: rs.roots[k].real)
    return rs.roots[i].real, rs.roots[i]


def max_real_part_precise(rs: ComplexRootSet):
    """Largest real part from the full-precision roots (gmpy2 values)."""
    _require_converged(rs)
    return max((gmpy2.mpc(z).real for z in rs.precise_roots), default=None)


# regions


@dataclass(frozen=True)
class RegionSpec:
    kind: str  # "rectangle" | "disk" | "halfplane"
    params: tuple

    def __post_init__(self):
        if self.kind == "rectangle":
            re0, re1, im0, im1 = self.params
            if not (re0 < re1 and im0 < im1):
                raise ValueError("rectangle bounds must be increasing")
        elif self.kind == "disk":
            _, radius = self.params
            if radius <= 0:
                raise ValueError("disk radius must be positive")
        elif self.kind == "halfplane":
            if len(self.params) != 1:
                raise ValueError("half-plane takes one Re threshold")
        else:
            raise ValueError(f"unknown region kind {self.kind!r}")

    @classmethod
    def rectangle(cls, re0, re1, im0, im1) -> "RegionSpec":
        return cls("rectangle", (re0, re1, im0, im1))

    @classmethod
    def disk(cls, center: complex, radius: float) -> "RegionSpec":
        return cls("disk", (complex(center), radius))

    @classmethod
    def halfplane(cls, re_max: float) -> "RegionSpec":
        """The closed half-plane ``Re z <= re_max``."""
        return cls("halfplane", (re_max,))

    def signed_distance(self, z: complex) -> float:
        """Positive inside, negative outside, magnitude = distance to the boundary."""
        if self.kind == "rectangle":
            re0, re1, im0, im1 = self.params
            inside = min(z.real - re0, re1 - z.real, z.imag - im0, im1 - z.imag)
            if inside >= 0:
                return inside
            dx = max(re0 - z.real, 0, z.real - re1)
            dy = max(im0 - z.imag, 0, z.imag - im1)
            return -math.hypot(dx, dy)
        if self.kind == "disk":
            c, r = self.params
            return r - abs(z - c)
        return self.params[0] - z.real


@dataclass(frozen=True)
class RegionResult:
    inside: tuple[bool | None, ...]  # None marks an indeterminate root

    @property
    def all_inside(self) -> bool | None:
        if any(v is False for v in self.inside):
            return False
        if any(v is None for v in self.inside):
            return None
        return True

    @property
    def none_inside(self) -> bool | None:
        if any(v is True for v in self.inside):
            return False
        if any(v is None for v in self.inside):
            return None
        return True


def in_region(rs: ComplexRootSet, region: RegionSpec) -> RegionResult:
    _require_converged(rs)
    out = []
    for z, rad in zip(rs.roots, rs.radii):
        dist = region.signed_distance(z)
        margin = max(rad, 1e-15 * max(1.0, abs(z)))
        out.append(None if abs(dist) <= margin else dist > 0)
    return RegionResult(tuple(out))


def mobius_disk_check(rs: ComplexRootSet) -> bool | None:
    """True when every root lies strictly outside the closed disk ``|z - 1/2| <= 1/2``."""
    return in_region(rs, RegionSpec.disk(0.5, 0.5)).none_inside


# graph-star root transfer


def star_root_transfer(rs: ComplexRootSet, k: int, n: int) -> list[complex]:
    """Roots of i(G^{k*}) predicted from the roots of i(G) for G of order ``n``.

    Each root r maps to r/(1 - k r); the remaining roots are -1/k with
    multiplicity n - alpha and -1/l with multiplicity n 2^(k-l-1) for l < k.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    out = []
    for r in rs.roots:
        den = 1 - k * r
        if abs(den) < 1e-300:
            raise ZeroDivisionError("root maps to the pole 1/k")
        out.append(r / den)
    out.extend([complex(-1 / k)] * (n - rs.degree))
    for ell in range(1, k):
        out.extend([complex(-1 / ell)] * (n * 2 ** (k - ell - 1)))
    return out


def kstar_threshold(rs: ComplexRootSet) -> int:
    """Smallest positive integer k strictly above max Re(r)/|r|^2."""
    _require_converged(rs)
    worst = max(r.real / abs(r) ** 2 for r in rs.roots)
    if worst < 0:
        return 1
    return math.floor(worst) + 1


# searches


@dataclass(frozen=True)
class JoinSearchResult:
    m: int | None
    witness: complex | None
    verdict: StabilityVerdict | None
    trend: tuple[tuple[int, float], ...]  # (m, max Re) for every m scanned
    first_nonstable: int | None

    @property
    def found(self) -> bool:
        return self.m is not None


def find_min_join_clique_m(pG: Poly, target_re: float = 0.0, cap: int = 5000) -> JoinSearchResult:
    """Smallest m <= cap with i(G + K_m) = pG + m x nonstable and a root of real part > target_re."""
    x = Poly.x()
    trend = []
    first_nonstable = None
    for m in range(1, cap + 1):
        p = pG + m * x
        verdict = hb_stable(p)
        if verdict.stable:
            trend.append((m, max_real_part(all_roots(p))[0]))
            continue
        if first_nonstable is None:
            first_nonstable = m
        re, z = max_real_part(all_roots(p))
        trend.append((m, re))
        if re > target_re:
            return JoinSearchResult(m, z, verdict, tuple(trend), first_nonstable)
    return JoinSearchResult(None, None, None, tuple(trend), first_nonstable)


@dataclass(frozen=True)
class SmallRootCertificate:
    n: int
    epsilon: Fraction
    point: Fraction  # f(point) < 0 and f(0) = 1 > 0, with -epsilon < point < 0
    interval_upper: str  # upper end of the enclosure of f(point)
    precision_bits: int
    exact_sign: int | None

    @property
    def certified(self) -> bool:
        return self.exact_sign in (None, -1) and self.interval_upper.startswith("-")


def star_small_root_check(n: int, epsilon: Fraction | float | str, exact: bool = True,
                          max_prec: int = 1 << 14) -> SmallRootCertificate:
    """Certify a real root of x + (1+x)^n in (-epsilon, 0).

    The sign at a rational point t just right of -1/ln(n) is enclosed with
    interval arithmetic (and optionally confirmed exactly); f(0) = 1.
    """
    eps = Fraction(epsilon)
    if not 0 < eps < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    if not n > math.exp(1 / eps):
        raise ValueError(f"need n > e^(1/epsilon) = {math.exp(1 / eps):.3f}")
    # rational point in [-1/ln n, 0), rounded toward zero, hence inside (-eps, 0)
    q = 1 << 20
    t = Fraction(-math.floor(q / math.log(n)), q)
    if not -eps < t < 0:
        raise ValueError("could not place a rational point inside (-epsilon, 0)")
    prec = 53
    while True:
        with mpmath.workprec(prec):
            ti = mpmath.iv.mpf(t.numerator) / t.denominator
            val = ti + (1 + ti) ** n
            upper = mpmath.mpf(val._mpi_[1])
        if upper < 0:
            break
        if prec >= max_prec:
            raise ArithmeticError("interval evaluation is inconclusive at the precision cap")
        prec *= 2
    exact_sign = None
    if exact:
        # q^n f(-a/q) = -a q^(n-1) + (q-a)^n
        a, qq = -t.numerator, t.denominator
        v = -a * qq ** (n - 1) + (qq - a) ** n
        exact_sign = (v > 0) - (v < 0)
    return SmallRootCertificate(n, eps, t, mpmath.nstr(upper, 20), prec, exact_sign)
