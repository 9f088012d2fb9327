"""Exact rational and cyclotomic arithmetic.

Rationals are :class:`fractions.Fraction`.  An element of ``Q(zeta_N)`` is a
:class:`CyclotomicNumber`: a sparse map ``exponent -> coefficient`` over a
declared order ``N`` (stored as integer numerators over one common
denominator).

Canonical form
--------------
Arithmetic never canonicalizes.  Equality, rationality and integrality are
decided on a canonical form obtained in two steps:

1. the order is lowered to the conductor of the element (the least ``M`` with
   the element in ``Q(zeta_M)``; ``M`` is never ``2 mod 4``), by averaging over
   ``Gal(Q(zeta_N)/Q(zeta_M))`` one prime at a time;
2. the element is reduced modulo the ``M``-th cyclotomic polynomial, i.e.
   written in the power basis ``1, z, ..., z^(phi(M)-1)`` of ``Z[zeta_M]``.

Since the power basis is an integral basis, an element is a cyclotomic
integer iff its canonical coefficients are integers.
"""
from __future__ import annotations

import cmath
import math
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Mapping

import mpmath
from mpmath.ctx_iv import MPIntervalContext
from sympy import cyclotomic_poly, factorint

from .errors import InvalidArgument, UndecidableError

Rational = Fraction

DEFAULT_PRECISION_CAP = 4096


def precision_cap() -> int:
    """Embedding precision cap in bits (``FUSIONFORGE_PRECISION_BITS`` overrides)."""
    raw = os.environ.get("FUSIONFORGE_PRECISION_BITS")
    if raw is None:
        return DEFAULT_PRECISION_CAP
    try:
        bits = int(raw)
    except ValueError:
        raise InvalidArgument(f"FUSIONFORGE_PRECISION_BITS={raw!r} is not an integer")
    if bits < 32:
        raise InvalidArgument("FUSIONFORGE_PRECISION_BITS must be at least 32")
    return bits


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


@lru_cache(maxsize=None)
def _primes(n: int) -> tuple[int, ...]:
    return tuple(sorted(factorint(n)))


@lru_cache(maxsize=None)
def _phi_poly(n: int) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Degree of Phi_n and its nonzero non-leading terms ``(k, a_k)``."""
    coeffs = [int(a) for a in reversed(cyclotomic_poly(n, polys=True).all_coeffs())]
    deg = len(coeffs) - 1
    return deg, tuple((k, a) for k, a in enumerate(coeffs[:-1]) if a)


def _power_basis(coeffs: Mapping[int, int], n: int) -> list[int]:
    """Coefficients of ``sum c_e x^e`` reduced modulo Phi_n (length phi(n))."""
    deg, low = _phi_poly(n)
    top = max(coeffs, default=0)
    arr = [0] * max(top + 1, deg)
    for e, c in coeffs.items():
        arr[e] += c
    for d in range(top, deg - 1, -1):
        a = arr[d]
        if a:
            arr[d] = 0
            base = d - deg
            for k, pk in low:
                arr[base + k] -= a * pk
    return arr[:deg]


def _project(coeffs: Mapping[int, int], den: int, n: int, p: int):
    """Average over Gal(Q(zeta_n)/Q(zeta_{n/p})); returns (coeffs, den) at order n/p."""
    m = n // p
    out: dict[int, int] = {}
    if m % p == 0:
        for e, c in coeffs.items():
            if e % p == 0:
                out[e // p] = out.get(e // p, 0) + c
        return out, den
    # p does not divide m: zeta_n^e = zeta_m^a zeta_p^b with e = a p + b m (mod n)
    pinv = pow(p, -1, m) if m > 1 else 0
    minv = pow(m, -1, p)
    for e, c in coeffs.items():
        a = (e * pinv) % m if m > 1 else 0
        b = (e * minv) % p
        w = c * (p - 1) if b == 0 else -c
        out[a] = out.get(a, 0) + w
    return out, den * (p - 1)


class CyclotomicNumber:
    """An exact element of ``Q(zeta_N)``, immutable.

    Examples
    --------
    >>> z = root_of_unity(3, 1)
    >>> z + z**2 + 1 == 0
    True
    """

    __slots__ = ("_order", "_coeffs", "_den", "_canon")

    def __init__(self, order: int, terms: Mapping[int, Fraction | int] | None = None):
        if order < 1:
            raise InvalidArgument(f"order must be >= 1, got {order}")
        acc: dict[int, Fraction] = {}
        for e, c in (terms or {}).items():
            e %= order
            acc[e] = acc.get(e, Fraction(0)) + Fraction(c)
        den = 1
        for c in acc.values():
            den = _lcm(den, c.denominator)
        ints = {e: int(c * den) for e, c in acc.items()}
        self._set(order, ints, den)

    def _set(self, order: int, coeffs: dict[int, int], den: int) -> None:
        coeffs = {e: c for e, c in coeffs.items() if c}
        if not coeffs:
            order, den = 1, 1
        else:
            g = den
            for c in coeffs.values():
                g = gcd(g, c)
                if g == 1:
                    break
            if g > 1:
                coeffs = {e: c // g for e, c in coeffs.items()}
                den //= g
            h = order
            for e in coeffs:
                h = gcd(h, e)
                if h == 1:
                    break
            if h > 1:
                order //= h
                coeffs = {e // h: c for e, c in coeffs.items()}
        self._order = order
        self._coeffs = coeffs
        self._den = den
        self._canon = None

    @classmethod
    def _raw(cls, order: int, coeffs: dict[int, int], den: int = 1) -> CyclotomicNumber:
        obj = cls.__new__(cls)
        obj._set(order, coeffs, den)
        return obj

    @classmethod
    def from_rational(cls, r: Fraction | int) -> CyclotomicNumber:
        r = Fraction(r)
        return cls._raw(1, {0: r.numerator}, r.denominator)

    # -- accessors -----------------------------------------------------
    @property
    def order(self) -> int:
        return self._order

    @property
    def terms(self) -> dict[int, Fraction]:
        return {e: Fraction(c, self._den) for e, c in sorted(self._coeffs.items())}

    @property
    def canonical(self) -> bool:
        c = self._canonical_data()
        return c == (self._order, tuple(sorted(self._coeffs.items())), self._den)

    def int_terms(self) -> tuple[dict[int, int], int]:
        """Integer numerators and the common denominator."""
        return dict(self._coeffs), self._den

    def is_zero(self) -> bool:
        return not self._coeffs

    # -- arithmetic ----------------------------------------------------
    @staticmethod
    def _coerce(other) -> CyclotomicNumber | None:
        if isinstance(other, CyclotomicNumber):
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber.from_rational(other)
        return None

    def __add__(self, other):
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        n = _lcm(self._order, y._order)
        f1, f2 = n // self._order, n // y._order
        d = _lcm(self._den, y._den)
        m1, m2 = d // self._den, d // y._den
        out = {e * f1: c * m1 for e, c in self._coeffs.items()}
        for e, c in y._coeffs.items():
            k = e * f2
            out[k] = out.get(k, 0) + c * m2
        return CyclotomicNumber._raw(n, out, d)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber._raw(self._order, {e: -c for e, c in self._coeffs.items()}, self._den)

    def __sub__(self, other):
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return self + (-y)

    def __rsub__(self, other):
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return y + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            r = Fraction(other)
            return CyclotomicNumber._raw(
                self._order,
                {e: c * r.numerator for e, c in self._coeffs.items()},
                self._den * r.denominator,
            )
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        n = _lcm(self._order, other._order)
        f1, f2 = n // self._order, n // other._order
        out: dict[int, int] = {}
        for e1, c1 in self._coeffs.items():
            a = e1 * f1
            for e2, c2 in other._coeffs.items():
                k = (a + e2 * f2) % n
                out[k] = out.get(k, 0) + c1 * c2
        return CyclotomicNumber._raw(n, out, self._den * other._den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, CyclotomicNumber):
            r = other.as_rational()
            if r is None:
                raise TypeError("division is only supported by rational values")
            other = r
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        other = Fraction(other)
        if other == 0:
            raise ZeroDivisionError("division by zero")
        return self * (1 / other)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = CyclotomicNumber.from_rational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> CyclotomicNumber:
        n = self._order
        return CyclotomicNumber._raw(n, {(-e) % n: c for e, c in self._coeffs.items()}, self._den)

    def galois(self, a: int) -> CyclotomicNumber:
        """Apply ``zeta_N -> zeta_N^a`` (``a`` coprime to the order)."""
        n = self._order
        if gcd(a, n) != 1:
            raise InvalidArgument(f"{a} is not a unit modulo {n}")
        return CyclotomicNumber._raw(n, {(a * e) % n: c for e, c in self._coeffs.items()}, self._den)

    # -- canonical form ------------------------------------------------
    def _canonical_data(self) -> tuple[int, tuple[tuple[int, int], ...], int]:
        if self._canon is not None:
            return self._canon
        n, coeffs, den = self._order, dict(self._coeffs), self._den
        if not coeffs:
            self._canon = (1, (), 1)
            return self._canon
        reduced = True
        while reduced and n > 1:
            reduced = False
            base = _power_basis(coeffs, n)
            for p in _primes(n):
                pc, pd = _project(coeffs, den, n, p)
                m = n // p
                f = n // m
                lifted = _power_basis({e * f: c for e, c in pc.items()}, n)
                # compare lifted/pd with base/den
                if all(a * den == b * pd for a, b in zip(lifted, base)):
                    n, coeffs, den = m, pc, pd
                    reduced = True
                    break
        vec = _power_basis(coeffs, n) if n > 1 else [sum(coeffs.values())]
        g = den
        for c in vec:
            g = gcd(g, c)
        items = tuple((e, c // g) for e, c in enumerate(vec) if c)
        den //= g
        if not items:
            self._canon = (1, (), 1)
        else:
            self._canon = (n, items, den)
        return self._canon

    def canonicalize(self) -> CyclotomicNumber:
        n, items, den = self._canonical_data()
        obj = CyclotomicNumber.__new__(CyclotomicNumber)
        obj._order, obj._coeffs, obj._den = n, dict(items), den
        obj._canon = (n, items, den)
        return obj

    def __eq__(self, other) -> bool:
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        if (self._order == y._order and self._den == y._den and self._coeffs == y._coeffs):
            return True
        return self._canonical_data() == y._canonical_data()

    def __hash__(self) -> int:
        n, items, den = self._canonical_data()
        if n == 1:
            return hash(Fraction(items[0][1] if items else 0, den))
        return hash((n, items, den))

    def as_rational(self) -> Fraction | None:
        if not self._coeffs:
            return Fraction(0)
        if self._order == 1:
            return Fraction(self._coeffs.get(0, 0), self._den)
        n, items, den = self._canonical_data()
        if n == 1:
            return Fraction(items[0][1] if items else 0, den)
        return None

    def is_rational(self) -> bool:
        return self.as_rational() is not None

    def is_cyclotomic_integer(self) -> bool:
        if self._den == 1:
            return True
        return self._canonical_data()[2] == 1

    def is_real(self) -> bool:
        return self == self.conjugate()

    # -- numerics ------------------------------------------------------
    def __complex__(self) -> complex:
        n = self._order
        s = sum(c * cmath.exp(2j * math.pi * e / n) for e, c in self._coeffs.items())
        return complex(s) / self._den

    def embed(self, precision_bits: int = 128) -> ComplexInterval:
        return embed(self, precision_bits)

    def real_sign(self, cap: int | None = None) -> int:
        return real_sign(self, cap)

    # -- text ----------------------------------------------------------
    def to_gap(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for e, c in sorted(self._coeffs.items()):
            r = Fraction(c, self._den)
            if e == 0 or self._order == 1:
                body = str(r)
            else:
                z = f"E({self._order})" + (f"^{e}" if e != 1 else "")
                if r == 1:
                    body = z
                elif r == -1:
                    body = "-" + z
                else:
                    body = f"{r}*{z}"
            if parts and not body.startswith("-"):
                body = "+" + body
            parts.append(body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"CyclotomicNumber({self.to_gap()})"

    __str__ = to_gap

    def to_json(self) -> list[dict]:
        return [
            {"den": str(Fraction(c, self._den).denominator), "exp": e,
             "num": str(Fraction(c, self._den).numerator), "order": self._order}
            for e, c in sorted(self._coeffs.items())
        ]

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> CyclotomicNumber:
        total = cls.from_rational(0)
        for t in data:
            try:
                n = int(t["order"])
                e = int(t["exp"])
                r = Fraction(int(t["num"]), int(t["den"]))
            except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
                raise InvalidArgument(f"malformed cyclotomic term {t!r}") from exc
            total = total + CyclotomicNumber(n, {e: r})
        return total


@dataclass(frozen=True)
class ComplexInterval:
    """Rectangle ``[re_lo, re_hi] x [im_lo, im_hi]`` with mpmath endpoints."""

    re_lo: mpmath.mpf
    re_hi: mpmath.mpf
    im_lo: mpmath.mpf
    im_hi: mpmath.mpf

    def contains(self, z: complex | float, slack: float = 0.0) -> bool:
        z = complex(z)
        return (self.re_lo - slack <= z.real <= self.re_hi + slack
                and self.im_lo - slack <= z.imag <= self.im_hi + slack)

    @property
    def width(self) -> mpmath.mpf:
        return max(self.re_hi - self.re_lo, self.im_hi - self.im_lo)

    def midpoint(self) -> complex:
        return complex(float((self.re_lo + self.re_hi) / 2), float((self.im_lo + self.im_hi) / 2))


def embed(x: CyclotomicNumber, precision_bits: int = 128) -> ComplexInterval:
    """Certified enclosure of ``x`` under ``zeta_N -> exp(2 pi i / N)``."""
    if precision_bits < 32:
        raise InvalidArgument("precision_bits must be >= 32")
    ctx = MPIntervalContext()
    ctx.prec = precision_bits
    re = ctx.mpf(0)
    im = ctx.mpf(0)
    n = x.order
    coeffs, den = x.int_terms()
    for e, c in coeffs.items():
        if e == 0:
            re += c
            continue
        g = gcd(e, n)
        angle = 2 * ctx.pi * (e // g) / (n // g)
        re += c * ctx.cos(angle)
        im += c * ctx.sin(angle)
    re /= den
    im /= den
    make = mpmath.mp.make_mpf
    return ComplexInterval(make(re._mpi_[0]), make(re._mpi_[1]), make(im._mpi_[0]), make(im._mpi_[1]))


def real_sign(x: CyclotomicNumber, cap: int | None = None) -> int:
    """Sign of a real cyclotomic number, by exact test then interval refinement."""
    r = x.as_rational()
    if r is not None:
        return (r > 0) - (r < 0)
    if not x.is_real():
        raise InvalidArgument(f"{x} is not real")
    cap = precision_cap() if cap is None else cap
    bits = 64
    while bits <= cap:
        box = embed(x, bits)
        if box.re_lo > 0:
            return 1
        if box.re_hi < 0:
            return -1
        bits *= 2
    raise UndecidableError(f"sign of {x} undecided at {cap} bits")


def root_of_unity(order: int, exponent: int = 1) -> CyclotomicNumber:
    if order < 1:
        raise InvalidArgument(f"order must be >= 1, got {order}")
    return CyclotomicNumber._raw(order, {exponent % order: 1})


def rational(r: Fraction | int | str) -> CyclotomicNumber:
    return CyclotomicNumber.from_rational(Fraction(r))


def zeta_cos(n: int, k: int) -> CyclotomicNumber:
    """``zeta_n^k + zeta_n^(-k)``."""
    return root_of_unity(n, k) + root_of_unity(n, -k)


@lru_cache(maxsize=None)
def _sqrt_prime(p: int) -> CyclotomicNumber:
    if p == 2:
        return zeta_cos(8, 1)
    gauss = CyclotomicNumber._raw(p, {t: (1 if pow(t, (p - 1) // 2, p) == 1 else -1) for t in range(1, p)})
    if p % 4 == 1:
        return gauss
    return gauss * root_of_unity(4, 3)


@lru_cache(maxsize=None)
def sqrt_integer(n: int) -> CyclotomicNumber:
    """Exact positive square root of ``n`` from quadratic Gauss sums."""
    if not isinstance(n, int) or n < 1:
        raise InvalidArgument(f"sqrt_integer needs a positive integer, got {n!r}")
    outside = 1
    result = CyclotomicNumber.from_rational(1)
    for p, k in factorint(n).items():
        outside *= p ** (k // 2)
        if k % 2:
            result = result * _sqrt_prime(p)
    return result * outside


_GAP_TERM = re.compile(
    r"(?P<sign>[+-]?)(?:(?P<coef>\d+(?:/\d+)?)\*?)?"
    r"(?:E\((?P<order>\d+)\)(?:\^\(?(?P<exp>-?\d+)\)?)?)?"
)


def parse_gap(text: str) -> CyclotomicNumber:
    """Parse GAP-style input such as ``-1/2+3*E(7)^2-E(4)``."""
    s = re.sub(r"\s+", "", text)
    if not s:
        raise InvalidArgument("empty cyclotomic expression")
    total = CyclotomicNumber.from_rational(0)
    pos = 0
    while pos < len(s):
        m = _GAP_TERM.match(s, pos)
        if m is None or m.end() == pos or (m.group("coef") is None and m.group("order") is None):
            raise InvalidArgument(f"cannot parse cyclotomic expression {text!r}")
        coef = Fraction(m.group("coef") or 1)
        if m.group("sign") == "-":
            coef = -coef
        if m.group("order") is not None:
            order = int(m.group("order"))
            if order < 1:
                raise InvalidArgument(f"invalid order in {text!r}")
            exp = int(m.group("exp") or 1)
            total = total + root_of_unity(order, exp) * coef
        else:
            total = total + coef
        pos = m.end()
        if pos < len(s) and s[pos] not in "+-":
            raise InvalidArgument(f"cannot parse cyclotomic expression {text!r}")
    return total
