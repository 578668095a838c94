"""Exact coefficient fields: rationals, Gaussian rationals, and prime fields.

Every ring in this package is built over one of these fields.  Elements are
plain hashable values (Fraction, GaussianRational, int) and all arithmetic is
routed through the field object so polynomial code stays field-agnostic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


def _frac_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None."""
    if q < 0:
        return None
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    if rn * rn != q.numerator or rd * rd != q.denominator:
        return None
    return Fraction(rn, rd)


@dataclass(frozen=True)
class GaussianRational:
    """An element a + b*i of Q(i), stored as exact rational parts."""

    re: Fraction
    im: Fraction

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"


class RationalField:
    """The field Q with Fraction elements."""

    name = "Q"
    characteristic = 0

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return type(other) is RationalField

    def __hash__(self):
        return hash("RationalField")

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, q):
        return Fraction(q)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def invert(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        return a / b

    def is_zero(self, a):
        return a == 0

    def is_one(self, a):
        return a == 1

    def eq(self, a, b):
        return a == b

    def imaginary_unit(self):
        return None

    def sqrt(self, a):
        return _frac_sqrt(a)


class GaussianRationalField:
    """The field Q(i) of Gaussian rationals."""

    name = "Q(i)"
    characteristic = 0

    def __repr__(self):
        return "QI"

    def __eq__(self, other):
        return type(other) is GaussianRationalField

    def __hash__(self):
        return hash("GaussianRationalField")

    @property
    def zero(self):
        return GaussianRational(Fraction(0), Fraction(0))

    @property
    def one(self):
        return GaussianRational(Fraction(1), Fraction(0))

    def from_int(self, n):
        return GaussianRational(Fraction(n), Fraction(0))

    def from_fraction(self, q):
        return GaussianRational(Fraction(q), Fraction(0))

    def from_parts(self, re, im):
        return GaussianRational(Fraction(re), Fraction(im))

    def add(self, a, b):
        return GaussianRational(a.re + b.re, a.im + b.im)

    def sub(self, a, b):
        return GaussianRational(a.re - b.re, a.im - b.im)

    def mul(self, a, b):
        return GaussianRational(a.re * b.re - a.im * b.im,
                                a.re * b.im + a.im * b.re)

    def neg(self, a):
        return GaussianRational(-a.re, -a.im)

    def invert(self, a):
        n = a.re * a.re + a.im * a.im
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return GaussianRational(a.re / n, -a.im / n)

    def div(self, a, b):
        return self.mul(a, self.invert(b))

    def is_zero(self, a):
        return a.re == 0 and a.im == 0

    def is_one(self, a):
        return a.re == 1 and a.im == 0

    def eq(self, a, b):
        return a == b

    def imaginary_unit(self):
        return GaussianRational(Fraction(0), Fraction(1))

    def sqrt(self, a):
        # sqrt(a+bi) = x+yi with x^2 = (a + |a+bi|)/2, y = b/(2x).
        if a.im == 0:
            r = _frac_sqrt(a.re)
            if r is not None:
                return GaussianRational(r, Fraction(0))
            r = _frac_sqrt(-a.re)
            if r is not None:
                return GaussianRational(Fraction(0), r)
            return None
        norm = _frac_sqrt(a.re * a.re + a.im * a.im)
        if norm is None:
            return None
        x = _frac_sqrt((a.re + norm) / 2)
        if x is None or x == 0:
            return None
        y = a.im / (2 * x)
        if x * x - y * y != a.re or 2 * x * y != a.im:
            return None
        return GaussianRational(x, y)


def _is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond the sizes used here."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """GF(p) for a prime p = 1 (mod 4), so that -1 has a square root.

    Offered as a fast drop-in coefficient field; elements are ints in [0, p).
    """

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p % 4 != 1:
            raise ValueError(f"prime field characteristic must be 1 mod 4, got {p}")
        self.p = p
        self.name = f"GF({p})"
        self.characteristic = p
        self._i = self._find_imaginary_unit()

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def _find_imaginary_unit(self) -> int:
        p = self.p
        for a in range(2, p):
            x = pow(a, (p - 1) // 4, p)
            if x * x % p == p - 1:
                return x
        raise AssertionError("unreachable for p = 1 mod 4")

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def from_int(self, n):
        return n % self.p

    def from_fraction(self, q):
        q = Fraction(q)
        if q.denominator % self.p == 0:
            raise ZeroDivisionError(f"denominator divisible by {self.p}")
        return q.numerator * pow(q.denominator, -1, self.p) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def invert(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.invert(b) % self.p

    def is_zero(self, a):
        return a % self.p == 0

    def is_one(self, a):
        return a % self.p == 1

    def eq(self, a, b):
        return (a - b) % self.p == 0

    def imaginary_unit(self):
        return self._i

    def sqrt(self, a):
        a %= self.p
        if a == 0:
            return 0
        if pow(a, (self.p - 1) // 2, self.p) != 1:
            return None
        return self._tonelli_shanks(a)

    def _tonelli_shanks(self, a: int) -> int:
        p = self.p
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            t2, i = t * t % p, 1
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
        return r


QQ = RationalField()
QI = GaussianRationalField()


def field_from_name(name: str):
    """Look up a field by its descriptor name, e.g. 'Q', 'Q(i)', 'GF(13)'."""
    name = name.strip()
    if name == "Q":
        return QQ
    if name == "Q(i)":
        return QI
    if name.startswith("GF(") and name.endswith(")"):
        return PrimeField(int(name[3:-1]))
    raise ValueError(f"unknown field: {name!r}")


def lift_coefficient(src, dst, value):
    """Map a coefficient of field `src` into field `dst` (Q -> Q(i), Q -> GF(p))."""
    if src is dst or src == dst:
        return value
    if isinstance(src, RationalField):
        return dst.from_fraction(value)
    if isinstance(src, GaussianRationalField) and isinstance(dst, PrimeField):
        i = dst.imaginary_unit()
        return (dst.from_fraction(value.re) + i * dst.from_fraction(value.im)) % dst.p
    raise ValueError(f"cannot lift coefficients from {src.name} to {dst.name}")
