"""Simultaneous polynomial root finding (Ehrlich-Aberth iteration).

Two engines share one driver: a vectorized IEEE-double engine and a
multiprecision engine on gmpy2 complex floats.  The driver starts in double
precision and escalates whenever a Newton step computed at higher precision
shows the approximations are not yet accurate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import gmpy2
import numpy as np

PRECISION_LADDER = (53, 128, 256, 512, 1024, 2048, 4096)
STALL_SWEEPS = 12  # sweeps without halving the worst correction
GLOBAL_PATIENCE = 60  # same, while corrections are still large


@dataclass
class AberthConfig:
    tol: float = 1e-13  # max relative correction at convergence (double engine)
    max_sweeps: int = 500  # per precision level
    accuracy: float = 1e-12  # accepted relative Newton step at verification
    max_prec: int = 4096
    angle_offset: float = 0.4  # radians, breaks conjugate symmetry of the start circle
    init: str = "newton_polygon"  # or "cauchy"



@dataclass
class RawRoots:
    roots: list  # gmpy2.mpc at precision ``prec`` (or complex for 53 bits)
    prec: int
    converged: bool
    sweeps: int
    newton_steps: list[float] = field(default_factory=list)


def _to_mpfr(c):
    if isinstance(c, Fraction):
        return gmpy2.mpfr(c.numerator) / gmpy2.mpfr(c.denominator)
    return gmpy2.mpfr(c)


def cauchy_radius(coeffs: Sequence) -> float:
    """Positive root of ``|a_d| x^d = sum_{k<d} |a_k| x^k`` (Cauchy's bound)."""
    d = len(coeffs) - 1
    logs = [math.log(abs(c)) if c else None for c in (abs(Fraction(c)) for c in coeffs)]
    lead = logs[d]

    def g(t):
        terms = [lk + k * t for k, lk in enumerate(logs[:d]) if lk is not None]
        if not terms:
            return -math.inf
        m = max(terms)
        return m + math.log(sum(math.exp(v - m) for v in terms)) - lead - d * t

    lo, hi = -800.0, 800.0
    if g(lo) <= 0:
        return math.exp(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if g(mid) > 0:
            lo = mid
        else:
            hi = mid
    return math.exp(hi)


def initial_guesses(coeffs: Sequence, offset: float, method: str = "newton_polygon") -> np.ndarray:
    d = len(coeffs) - 1
    if method == "cauchy":
        r = cauchy_radius(coeffs)
        k = np.arange(d)
        return r * np.exp(1j * (2 * np.pi * k / d + offset))
    # one circle per edge of the upper convex hull of (k, log|a_k|)
    pts = [(k, _log_abs(c)) for k, c in enumerate(coeffs) if c]
    hull: list[tuple[int, float]] = []
    for pt in pts:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) >= 0:
            hull.pop()
        hull.append(pt)
    out = []
    for (k0, l0), (k1, l1) in zip(hull, hull[1:]):
        m = k1 - k0
        r = math.exp((l0 - l1) / m)
        for j in range(m):
            out.append(r * np.exp(1j * (2 * np.pi * j / m + 2 * np.pi * k0 / d + offset)))
    return np.array(out, dtype=np.complex128)


def _log_abs(c) -> float:
    c = abs(Fraction(c))
    return math.log(c.numerator) - math.log(c.denominator)


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _float_coeffs(coeffs: Sequence):
    """Coefficients as float64 after a common power-of-two scaling, or None."""
    mags = [abs(Fraction(c)) for c in coeffs if c]
    big = max(mags)
    shift = 0
    if big > 2**900:
        shift = int(math.log2(big)) - 900
    try:
        arr = np.array([float(Fraction(c) / 2**shift) for c in coeffs], dtype=np.float64)
    except OverflowError:
        return None
    if not np.all(np.isfinite(arr)):
        return None
    small = min(mags) / 2**shift
    if small and float(small) == 0.0:
        return None
    return arr


def _ratio_double(a: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Newton corrections p(z)/p'(z), evaluated through the reversed polynomial off the unit disk."""
    d = len(a) - 1
    out = np.empty_like(z)
    inside = np.abs(z) <= 1.0
    if inside.any():
        zi = z[inside]
        p = np.full_like(zi, a[-1])
        dp = np.zeros_like(zi)
        for c in a[-2::-1]:
            dp = dp * zi + p
            p = p * zi + c
        with np.errstate(divide="ignore", invalid="ignore"):
            out[inside] = p / dp
    if (~inside).any():
        zo = z[~inside]
        w = 1.0 / zo
        q = np.full_like(zo, a[0])
        dq = np.zeros_like(zo)
        for c in a[1:]:
            dq = dq * w + q
            q = q * w + c
        # p'/p = w (d - w q'/q)
        with np.errstate(divide="ignore", invalid="ignore"):
            out[~inside] = 1.0 / (w * (d - w * dq / q))
    return out


def aberth_double(a: np.ndarray, z0: np.ndarray, tol: float, max_sweeps: int) -> tuple[np.ndarray, bool, int]:
    z = z0.astype(np.complex128).copy()
    d = len(z)
    active = np.ones(d, dtype=bool)
    prev = np.full(d, np.inf)
    best, since = np.inf, 0
    rng = np.random.default_rng(12345)
    for sweep in range(1, max_sweeps + 1):
        n = _ratio_double(a, z)
        bad = ~np.isfinite(n)
        if bad.any():
            z[bad] += 1e-8 * (1 + np.abs(z[bad])) * np.exp(2j * np.pi * rng.random(bad.sum()))
            continue
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        s = inv.sum(axis=1)
        w = n / (1.0 - n * s)
        w[~active] = 0
        w[~np.isfinite(w)] = 0
        z = z - w
        rel = np.abs(w) / np.maximum(np.abs(z), 1e-300)
        # freeze on convergence, or on stagnation at the rounding floor
        stalled = (rel < 1e-6) & (rel >= 0.5 * prev)
        prev = np.where(active, rel, prev)
        worst = float(rel[active].max()) if active.any() else 0.0
        active &= (rel >= tol) & ~stalled
        if not active.any():
            return z, True, sweep
        if worst < 0.5 * best:
            best, since = worst, 0
        else:
            since += 1
            if since >= (STALL_SWEEPS if worst < 1e-4 else GLOBAL_PATIENCE):
                return z, False, sweep
    return z, False, max_sweeps


def _horner_ratio_mp(a, zi, d):
    if abs(zi) <= 1:
        p = a[-1]
        dp = gmpy2.mpc(0)
        for c in a[-2::-1]:
            dp = dp * zi + p
            p = p * zi + c
        return p, dp
    w = 1 / zi
    q = a[0]
    dq = gmpy2.mpc(0)
    for c in a[1:]:
        dq = dq * w + q
        q = q * w + c
    # returns (p/z^d, p'/z^(d-1)) up to a common factor; only the ratio is used
    return q, w * (d * q - w * dq)


def newton_steps_mp(coeffs: Sequence, roots: Sequence, prec: int) -> list[float]:
    """|p(z)/p'(z)| for each root, evaluated at ``prec`` bits."""
    d = len(coeffs) - 1
    out = []
    with gmpy2.context(gmpy2.get_context(), precision=prec):
        a = [_to_mpfr(c) for c in coeffs]
        for z in roots:
            zi = gmpy2.mpc(z)
            p, dp = _horner_ratio_mp(a, zi, d)
            if dp == 0:
                out.append(math.inf)
            else:
                out.append(float(abs(p / dp)))
    return out


def aberth_mp(coeffs: Sequence, z0: Sequence, prec: int, max_sweeps: int) -> tuple[list, bool, int]:
    d = len(coeffs) - 1
    mpc_type = type(gmpy2.mpc(0))
    with gmpy2.context(gmpy2.get_context(), precision=prec):
        a = [_to_mpfr(c) for c in coeffs]
        tol = gmpy2.mpfr(2) ** (-(prec - 8))
        floor = gmpy2.mpfr(2) ** (-(prec // 2))
        prev = [None] * d
        best, since = None, 0
        z = [gmpy2.mpc(v) if isinstance(v, mpc_type) else gmpy2.mpc(complex(v)) for v in z0]
        active = [True] * d
        zc = np.array([complex(v) for v in z], dtype=np.complex128)
        for sweep in range(1, max_sweeps + 1):
            any_active = False
            worst = gmpy2.mpfr(0)
            for i in range(d):
                if not active[i]:
                    continue
                zi = z[i]
                p, dp = _horner_ratio_mp(a, zi, d)
                if dp == 0:
                    z[i] = zi * (1 + tol * 2**20) + tol * 2**20
                    any_active = True
                    continue
                n = p / dp
                # the repulsion sum only needs double accuracy: its error is scaled by n
                diff = zc[i] - zc
                diff[i] = 1.0
                inv = 1.0 / diff
                inv[i] = 0.0
                s = complex(inv.sum())
                den = 1 - n * s
                w = n / den if den != 0 else n
                z[i] = zi - w
                zc[i] = complex(z[i])
                az = abs(z[i])
                rel = abs(w) / (az if az > 0 else 1)
                worst = max(worst, rel)
                if rel <= tol or (rel < floor and prev[i] is not None and rel >= prev[i] / 2):
                    active[i] = False
                else:
                    prev[i] = rel
                    any_active = True
            if not any_active:
                return z, True, sweep
            if best is None or worst < best / 2:
                best, since = worst, 0
            else:
                since += 1
                if since >= (STALL_SWEEPS if worst < 1e-4 else GLOBAL_PATIENCE):
                    return z, False, sweep
    return z, False, max_sweeps


def quick_roots(coeffs: Sequence, config: AberthConfig | None = None) -> np.ndarray | None:
    """Unverified double-precision roots, or None when the coefficients do not fit a double."""
    cfg = config or AberthConfig()
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) < 2:
        return np.empty(0, dtype=np.complex128)
    arr = _float_coeffs(coeffs)
    if arr is None:
        return None
    z0 = initial_guesses(coeffs, cfg.angle_offset, cfg.init)
    z, _, _ = aberth_double(arr, z0, cfg.tol, cfg.max_sweeps)
    return z


def find_roots(coeffs: Sequence, config: AberthConfig | None = None) -> RawRoots:
    """All complex roots of a squarefree-ish exact polynomial (ascending coefficients)."""
    cfg = config or AberthConfig()
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    d = len(coeffs) - 1
    if d < 1:
        return RawRoots([], 53, True, 0)
    if d == 1:
        r = -Fraction(coeffs[0]) / Fraction(coeffs[1])
        with gmpy2.context(gmpy2.get_context(), precision=256):
            root = gmpy2.mpc(_to_mpfr(r))
        return RawRoots([root], 256, True, 0, [0.0])

    z0 = initial_guesses(coeffs, cfg.angle_offset, cfg.init)
    arr = _float_coeffs(coeffs)
    prec = 53
    sweeps = 0
    converged = False
    approx: list = list(z0)
    if arr is not None:
        z, converged, sweeps = aberth_double(arr, z0, cfg.tol, cfg.max_sweeps)
        approx = list(z)
    need = estimate_precision(coeffs, approx)
    if arr is not None:
        steps = newton_steps_mp(coeffs, approx, need + 64)
        if _accurate(steps, approx, cfg.accuracy):
            return RawRoots([gmpy2.mpc(complex(v)) for v in approx], 53, True, sweeps, steps)
    for prec in PRECISION_LADDER[1:]:
        if prec < need and prec != PRECISION_LADDER[-1]:
            continue
        if prec > cfg.max_prec:
            break
        z, converged, s = aberth_mp(coeffs, approx, prec, cfg.max_sweeps)
        sweeps += s
        approx = z
        # a stalled level can still be accurate: the Newton check decides
        steps = newton_steps_mp(coeffs, approx, 2 * prec)
        if _accurate(steps, approx, cfg.accuracy):
            return RawRoots(approx, prec, True, sweeps, steps)
    steps = newton_steps_mp(coeffs, approx, 2 * prec)
    return RawRoots(approx, prec, False, sweeps, steps)


def estimate_precision(coeffs: Sequence, approx: Sequence) -> int:
    """Bits needed so that Horner rounding stays below the root-neighbourhood slope.

    Uses ``max sum|a_k||z|^k / (|p'(z)| |z|)`` over the approximations as a
    cancellation estimate, plus 64 bits of working accuracy.
    """
    d = len(coeffs) - 1
    worst = 1.0
    with gmpy2.context(gmpy2.get_context(), precision=128):
        a = [_to_mpfr(c) for c in coeffs]
        da = [k * a[k] for k in range(1, d + 1)]
        for z in approx:
            zz = gmpy2.mpc(complex(z))
            az = abs(zz)
            s = gmpy2.mpfr(0)
            for c in reversed(a):
                s = s * az + abs(c)
            dp = gmpy2.mpc(0)
            for c in reversed(da):
                dp = dp * zz + c
            den = abs(dp) * az
            if den > 0:
                worst = max(worst, float(gmpy2.log2(s / den)))
    return int(worst) + 64


def _accurate(steps, roots, accuracy) -> bool:
    for st, z in zip(steps, roots):
        if not (st <= accuracy * max(1.0, abs(complex(z)))):
            return False
    return True


def relative_residual(coeffs: Sequence, z, prec: int = 256) -> float:
    """|p(z)| / sum |a_k| |z|^k at ``prec`` bits (relative backward error)."""
    with gmpy2.context(gmpy2.get_context(), precision=prec):
        zz = gmpy2.mpc(z)
        az = abs(zz)
        p = gmpy2.mpc(0)
        s = gmpy2.mpfr(0)
        for c in reversed(coeffs):
            m = _to_mpfr(c)
            p = p * zz + m
            s = s * az + abs(m)
        return float(abs(p) / s) if s else 0.0
