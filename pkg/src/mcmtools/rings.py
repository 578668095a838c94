"""Sparse multivariate polynomials over exact fields, with graded quotient rings.

A PolyRing is the ambient polynomial ring S = k[x_1..x_n] with a monomial
order and positive variable degrees.  A GradedRing is S together with a list
of homogeneous defining generators, i.e. the data of a quotient S/I; nothing
is reduced implicitly - quotient arithmetic happens through Groebner normal
forms in groebner.py.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

from .fields import QQ, QI, GaussianRational, lift_coefficient

MONOMIAL_ORDERS = ("grevlex", "lex")


class RingMismatchError(ValueError):
    """Operands live over different rings (arity/field/order mismatch)."""


class NotHomogeneousError(ValueError):
    """A polynomial required to be homogeneous is not."""


def monomial_key(order: str, degrees: tuple[int, ...]):
    """Sort key for exponent tuples; larger key = larger monomial."""
    if order == "grevlex":
        def key(mono):
            return (sum(e * d for e, d in zip(mono, degrees)),
                    tuple(-e for e in reversed(mono)))
    elif order == "lex":
        def key(mono):
            return mono
    else:
        raise ValueError(f"unknown monomial order: {order!r}")
    return key


def monomial_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a, b):
    """True if monomial a divides monomial b."""
    return all(x <= y for x, y in zip(a, b))


def monomial_div(a, b):
    """Quotient monomial a / b; caller guarantees divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def monomial_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


@dataclass(frozen=True)
class PolyRing:
    """Ambient graded polynomial ring: field, variable names, variable degrees."""

    field: object
    names: tuple[str, ...]
    degrees: tuple[int, ...]
    order: str = "grevlex"

    def __post_init__(self):
        if len(self.names) != len(set(self.names)):
            raise ValueError(f"duplicate variable names: {self.names}")
        if len(self.degrees) != len(self.names):
            raise ValueError("need one degree per variable")
        if any(d <= 0 for d in self.degrees):
            raise ValueError("variable degrees must be positive")
        if self.order not in MONOMIAL_ORDERS:
            raise ValueError(f"unknown monomial order: {self.order!r}")

    def __repr__(self):
        return f"PolyRing({self.field.name}[{','.join(self.names)}])"

    @property
    def nvars(self):
        return len(self.names)

    def key(self):
        return monomial_key(self.order, self.degrees)

    def monomial_degree(self, mono):
        return sum(e * d for e, d in zip(mono, self.degrees))

    def zero(self):
        return Polynomial(self, ())

    def one(self):
        return self.constant(self.field.one)

    def constant(self, c):
        if self.field.is_zero(c):
            return self.zero()
        return Polynomial(self, (((0,) * self.nvars, c),))

    def from_int(self, n):
        return self.constant(self.field.from_int(n))

    def var(self, name):
        i = self.names.index(name)
        mono = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, ((mono, self.field.one),))

    def gens(self):
        return tuple(self.var(n) for n in self.names)

    def monomial(self, mono, coeff=None):
        c = self.field.one if coeff is None else coeff
        if self.field.is_zero(c):
            return self.zero()
        return Polynomial(self, ((tuple(mono), c),))

    def from_terms(self, terms):
        """Build a polynomial from an iterable of (exponent tuple, coeff)."""
        acc = {}
        for mono, c in terms:
            mono = tuple(mono)
            if len(mono) != self.nvars:
                raise RingMismatchError("exponent arity mismatch")
            prev = acc.get(mono)
            c = self.field.add(prev, c) if prev is not None else c
            if self.field.is_zero(c):
                acc.pop(mono, None)
            else:
                acc[mono] = c
        key = self.key()
        return Polynomial(self, tuple(sorted(acc.items(), key=lambda t: key(t[0]),
                                             reverse=True)))

    def monomials_of_degree(self, d):
        """All exponent tuples of weighted degree exactly d, in order-descending order."""
        if d < 0:
            return []
        out = []
        mono = [0] * self.nvars

        def rec(i, remaining):
            if i == self.nvars - 1:
                dv = self.degrees[i]
                if remaining % dv == 0:
                    mono[i] = remaining // dv
                    out.append(tuple(mono))
                    mono[i] = 0
                return
            dv = self.degrees[i]
            for e in range(remaining // dv, -1, -1):
                mono[i] = e
                rec(i + 1, remaining - e * dv)
            mono[i] = 0

        rec(0, d)
        key = self.key()
        out.sort(key=key, reverse=True)
        return out


class Polynomial:
    """Immutable sparse polynomial: terms sorted descending in the ring's order."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- basic protocol -------------------------------------------------
    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.ring, self.terms)))
        return self._hash

    def __eq__(self, other):
        return (isinstance(other, Polynomial) and self.ring == other.ring
                and self.terms == other.terms)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __repr__(self):
        from .textio import format_poly
        return format_poly(self)

    # -- arithmetic ------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, Polynomial) or other.ring != self.ring:
            raise RingMismatchError("polynomials over different rings")

    def __add__(self, other):
        self._check(other)
        return self.ring.from_terms(list(self.terms) + list(other.terms))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        neg = self.ring.field.neg
        return Polynomial(self.ring, tuple((m, neg(c)) for m, c in self.terms))

    def __mul__(self, other):
        self._check(other)
        F = self.ring.field
        acc = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = monomial_mul(m1, m2)
                c = F.mul(c1, c2)
                prev = acc.get(m)
                c = F.add(prev, c) if prev is not None else c
                if F.is_zero(c):
                    acc.pop(m, None)
                else:
                    acc[m] = c
        key = self.ring.key()
        return Polynomial(self.ring,
                          tuple(sorted(acc.items(), key=lambda t: key(t[0]),
                                       reverse=True)))

    def scale(self, c):
        """Multiply by a field element."""
        F = self.ring.field
        if F.is_zero(c):
            return self.ring.zero()
        return Polynomial(self.ring, tuple((m, F.mul(c, cf)) for m, cf in self.terms))

    def mul_term(self, mono, coeff):
        """Multiply by a single term (monomial, coeff)."""
        F = self.ring.field
        if F.is_zero(coeff):
            return self.ring.zero()
        return Polynomial(self.ring, tuple((monomial_mul(m, mono), F.mul(coeff, c))
                                           for m, c in self.terms))

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        for _ in range(n):
            result = result * self
        return result

    # -- structure -------------------------------------------------------
    def lead(self):
        """Leading (monomial, coeff); raises on the zero polynomial."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return self.terms[0]

    def constant_coefficient(self):
        zero_mono = (0,) * self.ring.nvars
        for m, c in self.terms:
            if m == zero_mono:
                return c
        return self.ring.field.zero

    def degree(self):
        """Weighted total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(self.ring.monomial_degree(m) for m, _ in self.terms)

    def is_homogeneous(self):
        if not self.terms:
            return True
        degs = {self.ring.monomial_degree(m) for m, _ in self.terms}
        return len(degs) == 1

    def homogeneous_degree(self):
        """Degree of a homogeneous polynomial; None for 0, error if inhomogeneous."""
        if not self.terms:
            return None
        if not self.is_homogeneous():
            raise NotHomogeneousError(f"not homogeneous: {self!r}")
        return self.ring.monomial_degree(self.terms[0][0])

    def coefficient_of(self, mono):
        for m, c in self.terms:
            if m == tuple(mono):
                return c
        return self.ring.field.zero

    # -- maps ------------------------------------------------------------
    def substitute(self, images, target_ring):
        """Substitute each variable by a polynomial over target_ring.

        `images` maps variable name -> Polynomial over target_ring; variables
        not listed must exist in the target ring under the same name.
        """
        cache = {}
        for idx, name in enumerate(self.ring.names):
            if name in images:
                cache[idx] = images[name]
            else:
                cache[idx] = target_ring.var(name)
        src_field, dst_field = self.ring.field, target_ring.field
        result = target_ring.zero()
        for mono, c in self.terms:
            term = target_ring.constant(lift_coefficient(src_field, dst_field, c))
            for idx, e in enumerate(mono):
                if e:
                    term = term * cache[idx] ** e
            result = result + term
        return result

    def lift_to(self, target_ring):
        """Reinterpret over a ring with the same variable names (field may extend)."""
        if target_ring.names != self.ring.names:
            raise RingMismatchError("variable names differ")
        src_field, dst_field = self.ring.field, target_ring.field
        return target_ring.from_terms(
            (m, lift_coefficient(src_field, dst_field, c)) for m, c in self.terms)


@dataclass(frozen=True)
class GradedRing:
    """Quotient ring data: an ambient PolyRing plus homogeneous defining generators."""

    ambient: PolyRing
    modulus: tuple = ()

    def __post_init__(self):
        for g in self.modulus:
            if g.ring != self.ambient:
                raise RingMismatchError("modulus generator over a different ring")
            if g.is_zero() or not g.is_homogeneous():
                raise NotHomogeneousError("modulus generators must be nonzero homogeneous")

    def __repr__(self):
        mods = ", ".join(repr(g) for g in self.modulus) or "0"
        return f"GradedRing({self.ambient!r} / ({mods}))"

    @property
    def is_hypersurface(self):
        return len(self.modulus) == 1

    @property
    def field(self):
        return self.ambient.field

    def hilbert_function(self, d):
        """dim_k of the degree-d piece of the quotient ring."""
        from .groebner import ring_hilbert_function
        return ring_hilbert_function(self, d)


def poly_ring(names, field=QQ, degrees=None, order="grevlex"):
    """Convenience constructor: poly_ring("x,u,v,t") or poly_ring(["x","t"])."""
    if isinstance(names, str):
        names = tuple(n.strip() for n in names.split(","))
    else:
        names = tuple(names)
    degs = tuple(degrees) if degrees is not None else (1,) * len(names)
    return PolyRing(field, names, degs, order)
