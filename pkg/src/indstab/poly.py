"""Dense univariate polynomials with exact integer or rational coefficients.

Coefficients are stored in ascending order (``coeffs[k]`` multiplies ``x**k``)
and are either Python ``int`` or ``fractions.Fraction``.  Nothing here ever
rounds; float and complex evaluation are separate, explicit modes.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

import gmpy2
import mpmath

Number = Union[int, Fraction]


KRONECKER_MIN_LEN = 24


def _all_int(cs: Sequence[Number]) -> bool:
    return all(type(c) is int for c in cs)


def _pack(cs: Sequence[int], digits: int) -> gmpy2.mpz:
    # nonnegative coefficients as fixed-width hex digits, highest first
    return gmpy2.mpz("".join(format(c, f"0{digits}x") for c in reversed(cs)) or "0", 16)


def _kronecker_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Exact integer product via one big-integer multiplication.

    Coefficients are packed into base 2**bits with ``bits`` wide enough for
    every product coefficient; signs are handled by splitting each input into
    positive and negative parts and unpacking with a half-range offset.
    """
    bound = min(len(a), len(b)) * max(map(abs, a)) * max(map(abs, b))
    digits = (bound.bit_length() + 2 + 3) // 4
    bits = 4 * digits

    def signed(cs: Sequence[int]) -> gmpy2.mpz:
        return _pack([max(c, 0) for c in cs], digits) - _pack([max(-c, 0) for c in cs], digits)

    size = len(a) + len(b) - 1
    half = 1 << (bits - 1)
    offset = _pack([half] * size, digits)
    packed = signed(a) * signed(b) + offset
    text = packed.digits(16).rjust(size * digits, "0")
    return [int(text[i - digits:i], 16) - half for i in range(len(text), 0, -digits)]


def _norm(c: Number) -> Number:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class Poly:
    """Immutable dense polynomial over Z or Q."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = []
        for c in coeffs:
            if isinstance(c, bool) or not isinstance(c, Rational):
                raise TypeError(f"exact coefficient required, got {type(c).__name__}")
            cs.append(_norm(c if isinstance(c, (int, Fraction)) else Fraction(c)))
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    def __reduce__(self):
        return (Poly, (self.coeffs,))

    # construction helpers
    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def const(cls, c: Number) -> "Poly":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: Number = 1) -> "Poly":
        return cls((0,) * k + (c,))

    # basic properties
    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Number:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def __getitem__(self, k: int) -> Number:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)!r})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            elif k == 1:
                terms.append(f"{c}*x")
            else:
                terms.append(f"{c}*x^{k}")
        return " + ".join(terms)

    # arithmetic
    def __add__(self, other) -> "Poly":
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly(tuple(x + y for x, y in zip(a, b)) + a[len(b):])

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other) -> "Poly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "Poly":
        return _coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Poly(c * other for c in self.coeffs)
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        if min(len(a), len(b)) > KRONECKER_MIN_LEN and _all_int(a) and _all_int(b):
            return Poly(_kronecker_mul(a, b))
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result, base = Poly.const(1), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __call__(self, t):
        return evaluate(self, t)

    def __divmod__(self, other) -> tuple["Poly", "Poly"]:
        return poly_divmod(self, _coerce(other))

    def __mod__(self, other) -> "Poly":
        return poly_divmod(self, _coerce(other))[1]

    def __floordiv__(self, other) -> "Poly":
        return poly_divmod(self, _coerce(other))[0]

    # structural transforms
    def derivative(self, order: int = 1) -> "Poly":
        if order < 0:
            raise ValueError("derivative order must be nonnegative")
        cs = list(self.coeffs)
        for _ in range(order):
            cs = [k * c for k, c in enumerate(cs)][1:]
        return Poly(cs)

    def compose(self, inner: "Poly") -> "Poly":
        """Return ``self(inner(x))`` by Horner's scheme."""
        inner = _coerce(inner)
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def even_odd(self) -> tuple["Poly", "Poly"]:
        """Split ``P(x) = E(x^2) + x*O(x^2)`` and return ``(E, O)``."""
        return Poly(self.coeffs[0::2]), Poly(self.coeffs[1::2])

    def reversal(self) -> "Poly":
        """Coefficients reversed: ``x^d * P(1/x)``.

        Roots map to reciprocals only when ``P(0) != 0``; see :func:`reversal`.
        """
        return Poly(reversed(self.coeffs))

    def shift(self, k: int) -> "Poly":
        """Multiply by ``x**k``; negative ``k`` divides exactly by ``x**-k``."""
        if not self.coeffs:
            return Poly()
        if k >= 0:
            return Poly((0,) * k + self.coeffs)
        if any(self.coeffs[:-k]):
            raise ValueError(f"polynomial is not divisible by x^{-k}")
        return Poly(self.coeffs[-k:])

    def primitive(self) -> tuple[Fraction, "Poly"]:
        """Return ``(c, q)`` with ``self == c*q``, ``c > 0`` and ``q`` primitive over Z."""
        if not self.coeffs:
            return Fraction(1), self
        den = 1
        for c in self.coeffs:
            if isinstance(c, Fraction):
                den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        return Fraction(g, den), Poly(v // g for v in ints)

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        lc = Fraction(self.lc)
        return Poly(Fraction(c) / lc for c in self.coeffs)

    # serialization
    def to_json(self) -> str:
        return json.dumps(self.to_strings())

    def to_strings(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_strings(cls, items: Sequence[str]) -> "Poly":
        out = []
        for s in items:
            s = str(s).strip()
            out.append(Fraction(s) if "/" in s else int(s))
        return cls(out)

    @classmethod
    def from_json(cls, text: str) -> "Poly":
        data = json.loads(text)
        if not isinstance(data, list):
            raise ValueError("polynomial JSON must be an array of coefficient strings")
        return cls.from_strings(data)


def _coerce(p) -> Poly:
    if isinstance(p, Poly):
        return p
    if isinstance(p, (int, Fraction)) and not isinstance(p, bool):
        return Poly.const(p)
    raise TypeError(f"cannot use {type(p).__name__} as a polynomial")


def poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Euclidean division over Q."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    r = [Fraction(c) for c in a.coeffs]
    db, lb = b.degree, Fraction(b.lc)
    if len(r) - 1 < db:
        return Poly(), a
    q = [Fraction(0)] * (len(r) - db)
    bc = b.coeffs
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db] / lb
        q[k] = c
        if c:
            for j in range(db + 1):
                r[k + j] -= c * bc[j]
    return Poly(q), Poly(r[:db])


def exact_remainder(p: Poly, q: Poly) -> Poly:
    return poly_divmod(p, q)[1]


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd over Q (zero if both inputs are zero)."""
    a, b = p, q
    while not b.is_zero():
        a, b = b, _prim(poly_divmod(a, b)[1])
    return a.monic()


def _prim(p: Poly) -> Poly:
    return p.primitive()[1] if not p.is_zero() else p


def exact_quotient(p: Poly, q: Poly) -> Poly:
    quo, rem = poly_divmod(p, q)
    if not rem.is_zero():
        raise ArithmeticError("division is not exact")
    return quo


def squarefree_part(p: Poly) -> Poly:
    if p.degree <= 0:
        return Poly.const(1) if not p.is_zero() else p
    g = poly_gcd(p, p.derivative())
    return exact_quotient(p, g)


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: ``p = c * prod(f_i ** i)`` with pairwise coprime squarefree ``f_i``.

    Returns ``[(f_i, i), ...]`` for the nonconstant factors, each primitive
    with positive leading coefficient.
    """
    if p.degree <= 0:
        return []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = exact_quotient(p, a)
    c = exact_quotient(dp, a)
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        if a.degree > 0:
            out.append((_standard(a), i))
        b = exact_quotient(b, a)
        c = exact_quotient(d, a)
        d = c - b.derivative()
        i += 1
    return out


def _standard(p: Poly) -> Poly:
    q = _prim(p)
    return -q if q.lc < 0 else q


def reversal(p: Poly) -> tuple[Poly, bool]:
    """Reversed polynomial plus a flag that is False when ``p(0) == 0``.

    With the flag False the reciprocal-root correspondence does not hold.
    """
    return p.reversal(), p[0] != 0


def derivative(p: Poly, order: int = 1) -> Poly:
    return p.derivative(order)


def compose(p: Poly, q: Poly) -> Poly:
    return p.compose(q)


def even_odd_split(p: Poly) -> tuple[Poly, Poly]:
    return p.even_odd()


def evaluate(p: Poly, point, mode: str = "exact", prec: int = 256):
    """Horner evaluation.

    ``mode`` is one of ``exact`` (int/Fraction point, no rounding), ``float``
    (IEEE double), ``extended`` (mpmath real at ``prec`` bits) or ``complex``
    (Python complex; mpmath complex when ``prec`` > 53 and the point is mpc).
    """
    cs = p.coeffs
    if mode == "exact":
        if isinstance(point, float):
            raise TypeError("exact evaluation needs an int or Fraction point")
        acc: Number = 0
        for c in reversed(cs):
            acc = acc * point + c
        return _norm(acc) if isinstance(acc, Fraction) else acc
    if mode == "float":
        t = float(point)
        acc_f = 0.0
        for c in reversed(cs):
            acc_f = acc_f * t + float(c)
        return acc_f
    if mode == "extended":
        with mpmath.workprec(prec):
            t = mpmath.mpf(point.numerator) / point.denominator if isinstance(point, Fraction) else mpmath.mpf(point)
            acc_m = mpmath.mpf(0)
            for c in reversed(cs):
                acc_m = acc_m * t + (mpmath.mpf(c.numerator) / c.denominator if isinstance(c, Fraction) else c)
            return +acc_m
    if mode == "complex":
        if isinstance(point, mpmath.mpc):
            with mpmath.workprec(prec):
                acc_c = mpmath.mpc(0)
                for c in reversed(cs):
                    acc_c = acc_c * point + (mpmath.mpf(c.numerator) / c.denominator if isinstance(c, Fraction) else c)
                return +acc_c
        z = complex(point)
        acc_z = 0j
        for c in reversed(cs):
            acc_z = acc_z * z + float(c)
        return acc_z
    raise ValueError(f"unknown evaluation mode {mode!r}")


def sign_at(p: Poly, t: Fraction) -> int:
    """Exact sign of ``p(t)`` using integer-only homogeneous Horner."""
    t = Fraction(t)
    num, den = t.numerator, t.denominator
    cs = p.coeffs
    if not cs:
        return 0
    if isinstance(cs[-1], Fraction) or any(isinstance(c, Fraction) for c in cs):
        v = evaluate(p, t)
        return (v > 0) - (v < 0)
    # acc = sum c_k num^k den^(d-k), same sign as p(t) since den > 0
    acc = 0
    dpow = 1
    for c in reversed(cs):
        acc = acc * num + c * dpow
        dpow *= den
    return (acc > 0) - (acc < 0)
