"""Exact scalars over Q and over real quadratic fields Q(sqrt(d)).

Every structure constant in this package is a ``Scalar``: a value
``a + b*sqrt(d)`` with ``a``, ``b`` rational (stdlib ``Fraction``) and ``d``
a squarefree integer.  ``d == 0`` encodes a pure rational, in which case
``b == 0``.  The representation is canonical: a zero surd part always
collapses to ``d == 0``, so equal values compare equal field-by-field.

Values with two different nonzero ``d`` never combine; mixing them raises
``IncompatibleFieldError`` instead of silently promoting to a bigger field.

Text format (used by the JSON documents of the CLI):

    "7"            integer
    "3/4"          rational
    "12+3*sqrt(19)"
    "-2/5*sqrt(19)"
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Union

#: Exact rational numbers; always reduced, denominator > 0 (guaranteed by Fraction).
Rational = Fraction

ScalarLike = Union["Scalar", Fraction, int]


class IncompatibleFieldError(ArithmeticError):
    """Two scalars with distinct nonzero discriminants were combined."""


class ScalarParseError(ValueError):
    """A scalar string did not match the accepted text format."""


def squarefree_part(n: int) -> tuple[int, int]:
    """Split ``n > 0`` as ``s**2 * d`` with ``d`` squarefree; returns ``(s, d)``."""
    if n <= 0:
        raise ValueError("squarefree_part needs a positive integer")
    s, d, p = 1, 1, 2
    while p * p <= n:
        if n % (p * p) == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                d *= p
        elif n % p == 0:
            n //= p
            d *= p
        p += 1 if p == 2 else 2
    return s, d * n


def is_squarefree(d: int) -> bool:
    return d > 0 and squarefree_part(d)[1] == d


@dataclass(frozen=True)
class Scalar:
    """An element ``a + b*sqrt(d)`` of Q (d = 0) or Q(sqrt(d))."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    d: int = 0

    def __post_init__(self) -> None:
        if not isinstance(self.a, Fraction) or not isinstance(self.b, Fraction):
            object.__setattr__(self, "a", Fraction(self.a))
            object.__setattr__(self, "b", Fraction(self.b))
        if self.d == 1:
            # sqrt(1) is rational; fold it away so the form stays canonical
            object.__setattr__(self, "a", self.a + self.b)
            object.__setattr__(self, "b", Fraction(0))
            object.__setattr__(self, "d", 0)
        if self.b == 0 and self.d != 0:
            object.__setattr__(self, "d", 0)
        if self.d < 0:
            raise ValueError("discriminant must be nonnegative")
        if self.d != 0 and not is_squarefree(self.d):
            raise ValueError(f"discriminant {self.d} is not squarefree")
        if self.d == 0 and self.b != 0:
            raise ValueError("rational scalar (d = 0) cannot carry a surd part")

    # -- constructors -------------------------------------------------------

    @classmethod
    def of(cls, x: ScalarLike) -> Scalar:
        if isinstance(x, Scalar):
            return x
        return cls(Fraction(x), Fraction(0), 0)

    @classmethod
    def sqrt_of(cls, d: int, coeff: Fraction | int = 1) -> Scalar:
        """``coeff * sqrt(d)`` with ``d`` positive and squarefree."""
        return cls(Fraction(0), Fraction(coeff), d)

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.d == 0

    @property
    def rational(self) -> Fraction:
        if self.d != 0:
            raise IncompatibleFieldError(f"{self} is not rational")
        return self.a

    def _common_d(self, other: Scalar) -> int:
        if self.d == 0:
            return other.d
        if other.d == 0 or other.d == self.d:
            return self.d
        raise IncompatibleFieldError(f"cannot combine sqrt({self.d}) with sqrt({other.d})")

    # -- field operations ---------------------------------------------------

    def __add__(self, other: ScalarLike) -> Scalar:
        if isinstance(other, (int, Fraction)):
            other = Scalar.of(other)
        elif not isinstance(other, Scalar):
            return NotImplemented
        d = self._common_d(other)
        return Scalar(self.a + other.a, self.b + other.b, d)

    __radd__ = __add__

    def __neg__(self) -> Scalar:
        return Scalar(-self.a, -self.b, self.d)

    def __sub__(self, other: ScalarLike) -> Scalar:
        if isinstance(other, (int, Fraction)):
            other = Scalar.of(other)
        elif not isinstance(other, Scalar):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: ScalarLike) -> Scalar:
        return (-self) + other

    def __mul__(self, other: ScalarLike) -> Scalar:
        if isinstance(other, (int, Fraction)):
            return Scalar(self.a * other, self.b * other, self.d)
        if not isinstance(other, Scalar):
            return NotImplemented
        d = self._common_d(other)
        a = self.a * other.a + self.b * other.b * d
        b = self.a * other.b + self.b * other.a
        return Scalar(a, b, d)

    __rmul__ = __mul__

    def conjugate(self) -> Scalar:
        return Scalar(self.a, -self.b, self.d)

    def inverse(self) -> Scalar:
        """Multiplicative inverse; exact, via the conjugate over the norm."""
        if self.is_zero():
            raise ZeroDivisionError("scalar 0 has no inverse")
        if self.d == 0:
            return Scalar(1 / self.a, Fraction(0), 0)
        norm = self.a * self.a - self.b * self.b * self.d
        # d squarefree > 1, so sqrt(d) is irrational and the norm of a
        # nonzero element never vanishes
        return Scalar(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, other: ScalarLike) -> Scalar:
        if isinstance(other, (int, Fraction)):
            other = Scalar.of(other)
        elif not isinstance(other, Scalar):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: ScalarLike) -> Scalar:
        return Scalar.of(other) * self.inverse()

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- display ------------------------------------------------------------

    @staticmethod
    def _frac_str(q: Fraction) -> str:
        return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"

    def __str__(self) -> str:
        if self.d == 0:
            return self._frac_str(self.a)
        surd = f"sqrt({self.d})" if abs(self.b) == 1 else f"{self._frac_str(abs(self.b))}*sqrt({self.d})"
        sign = "-" if self.b < 0 else "+"
        if self.a == 0:
            return f"-{surd}" if self.b < 0 else surd
        return f"{self._frac_str(self.a)}{sign}{surd}"

    def __repr__(self) -> str:
        return f"Scalar({self})"


ZERO = Scalar.of(0)
ONE = Scalar.of(1)

_FRAC = r"[+-]?\d+(?:/\d+)?"
_SURD_RE = re.compile(
    rf"^(?:(?P<a>{_FRAC})(?=[+-]))?(?P<sign>[+-]?)(?:(?P<b>\d+(?:/\d+)?)\*)?sqrt\((?P<d>\d+)\)$"
)
_RAT_RE = re.compile(rf"^{_FRAC}$")


def parse_scalar(text: str) -> Scalar:
    """Parse the canonical text format (integer, p/q, or a+-b*sqrt(d))."""
    s = text.strip().replace(" ", "")
    if _RAT_RE.match(s):
        return Scalar(Fraction(s), Fraction(0), 0)
    m = _SURD_RE.match(s)
    if m is None:
        raise ScalarParseError(f"cannot parse scalar {text!r}")
    a = Fraction(m.group("a")) if m.group("a") else Fraction(0)
    b = Fraction(m.group("b")) if m.group("b") else Fraction(1)
    if m.group("sign") == "-":
        b = -b
    d = int(m.group("d"))
    if d == 0:
        raise ScalarParseError(f"sqrt(0) is not a valid surd in {text!r}")
    s2, d0 = squarefree_part(d)
    return Scalar(a, b * s2, d0)


def format_scalar(x: ScalarLike) -> str:
    return str(Scalar.of(x))


# -- exact square roots and quadratics --------------------------------------


def _fraction_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    rn, rd = isqrt(q.numerator), isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def scalar_sqrt(x: Scalar) -> Scalar | None:
    """An exact square root of ``x`` inside Q or a single Q(sqrt(d)), if one exists.

    For rational ``x > 0`` the root is either rational or ``r*sqrt(d0)`` with
    ``d0`` the squarefree part.  For ``x`` in Q(sqrt(d)) the root is searched
    in the same field.  Returns ``None`` when no such root exists.
    """
    if x.is_zero():
        return ZERO
    if x.d == 0:
        if x.a < 0:
            return None
        r = _fraction_sqrt(x.a)
        if r is not None:
            return Scalar.of(r)
        s, d0 = squarefree_part(x.a.numerator * x.a.denominator)
        return Scalar(Fraction(0), Fraction(s, x.a.denominator), d0)
    # root p + q*sqrt(d): p^2 + q^2 d = a and 2pq = b
    norm = x.a * x.a - x.b * x.b * x.d
    n = _fraction_sqrt(norm)
    if n is None:
        return None
    for root_norm in (n, -n):
        p2 = (x.a + root_norm) / 2
        p = _fraction_sqrt(p2)
        if p is None or p == 0:
            continue
        q = x.b / (2 * p)
        if p2 + q * q * x.d == x.a and 2 * p * q == x.b:
            cand = Scalar(p, q, x.d)
            if cand * cand == x:
                return cand
    return None


def solve_quadratic(a: Scalar, b: Scalar, c: Scalar) -> list[Scalar] | None:
    """Exact roots of ``a t^2 + b t + c = 0`` expressible in Q or one Q(sqrt(d)).

    Returns the root list (possibly empty for an irrational-beyond-quadratic
    or negative discriminant), or ``None`` for the degenerate identity
    ``0 = 0`` (every t solves).
    """
    if a.is_zero():
        if b.is_zero():
            return None if c.is_zero() else []
        return [(-c) / b]
    disc = b * b - Scalar.of(4) * a * c
    root = scalar_sqrt(disc)
    if root is None:
        return []
    if root.is_zero():
        return [(-b) / (a * 2)]
    return [((-b) + root) / (a * 2), ((-b) - root) / (a * 2)]
