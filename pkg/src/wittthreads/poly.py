"""Sparse multivariate polynomials over Q.

A ``MultiPoly`` carries an ordered variable tuple and a term map from
exponent vectors to nonzero ``Fraction`` coefficients:

    x^2*y - 3  over (x, y, z)  ->  {(2, 1, 0): 1, (0, 0, 0): -3}

Monomials are compared in graded lexicographic order with respect to the
variable tuple.  Division is exact multivariate division only: the quotient
is found by cancelling leading terms, and a nonzero remainder step raises
``NotDivisibleError``.  Groebner machinery is deliberately absent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .exactnum import Scalar, ScalarLike

Exponent = tuple[int, ...]


class NotDivisibleError(ArithmeticError):
    """Exact multivariate division left a nonzero remainder."""


def _grlex_key(e: Exponent) -> tuple:
    return (sum(e), e)


@dataclass(frozen=True)
class MultiPoly:
    variables: tuple[str, ...]
    terms: Mapping[Exponent, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        for e, c in self.terms.items():
            if len(e) != len(self.variables):
                raise ValueError("exponent length does not match variable count")
            c = Fraction(c)
            if c != 0:
                clean[tuple(e)] = c
        object.__setattr__(self, "terms", clean)

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, variables: Iterable[str]) -> MultiPoly:
        return cls(tuple(variables), {})

    @classmethod
    def const(cls, variables: Iterable[str], c: Fraction | int) -> MultiPoly:
        vs = tuple(variables)
        return cls(vs, {(0,) * len(vs): Fraction(c)})

    @classmethod
    def var(cls, variables: Iterable[str], name: str) -> MultiPoly:
        vs = tuple(variables)
        e = [0] * len(vs)
        e[vs.index(name)] = 1
        return cls(vs, {tuple(e): Fraction(1)})

    def _coerce(self, other) -> MultiPoly | None:
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise ValueError("variable tuples differ")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(self.variables, other)
        return None

    # -- ring operations ----------------------------------------------------

    def __add__(self, other) -> MultiPoly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in o.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return MultiPoly(self.variables, terms)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> MultiPoly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> MultiPoly:
        return (-self) + other

    def __mul__(self, other) -> MultiPoly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return MultiPoly(self.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> MultiPoly:
        if n < 0:
            raise ValueError("negative power")
        out = MultiPoly.const(self.variables, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def leading_term(self) -> tuple[Exponent, Fraction]:
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    # -- division, derivatives, evaluation -----------------------------------

    def divide_exact(self, divisor: MultiPoly) -> MultiPoly:
        """The exact quotient self / divisor; raises NotDivisibleError otherwise."""
        d = self._coerce(divisor)
        if d is None or d.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = self
        quot = MultiPoly.zero(self.variables)
        de, dc = d.leading_term()
        while not rem.is_zero():
            re, rc = rem.leading_term()
            qe = tuple(a - b for a, b in zip(re, de))
            if any(x < 0 for x in qe):
                raise NotDivisibleError("no exact quotient exists")
            t = MultiPoly(self.variables, {qe: rc / dc})
            quot = quot + t
            rem = rem - t * d
        return quot

    def derivative(self, name: str) -> MultiPoly:
        i = self.variables.index(name)
        terms: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            e2 = list(e)
            e2[i] -= 1
            terms[tuple(e2)] = terms.get(tuple(e2), Fraction(0)) + c * e[i]
        return MultiPoly(self.variables, terms)

    def gradient(self) -> list[MultiPoly]:
        return [self.derivative(v) for v in self.variables]

    def eval(self, point: Mapping[str, ScalarLike]) -> Scalar:
        """Exact evaluation; the point may live in Q or a quadratic field."""
        vals = [Scalar.of(point[v]) for v in self.variables]
        total = Scalar.of(0)
        for e, c in self.terms.items():
            term = Scalar.of(c)
            for v, k in zip(vals, e):
                for _ in range(k):
                    term = term * v
            total = total + term
        return total

    def subst(self, assignment: Mapping[str, "MultiPoly | Fraction | int"]) -> MultiPoly:
        """Substitute polynomials (over the same variables) for some variables."""
        out = MultiPoly.zero(self.variables)
        for e, c in self.terms.items():
            term = MultiPoly.const(self.variables, c)
            for v, k in zip(self.variables, e):
                if k == 0:
                    continue
                rep = assignment.get(v)
                if rep is None:
                    rep = MultiPoly.var(self.variables, v)
                elif not isinstance(rep, MultiPoly):
                    rep = MultiPoly.const(self.variables, rep)
                term = term * rep**k
            out = out + term
        return out

    # -- display -------------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                f"{v}^{k}" if k > 1 else v for v, k in zip(self.variables, e) if k > 0
            )
            if not mono:
                parts.append(str(c))
            elif abs(c) == 1:
                parts.append(mono if c > 0 else f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self) -> str:
        return f"MultiPoly({self})"
