"""The variety of 8- and 9-dimensional no-zero threads.

For dimension 8 the defining relations on (b_1, ..., b_6) form four
quadratic equations.  Fixing the middle coordinates (b_2, b_3, b_4) =
(x, y, z), the first three equations are linear in b_1, b_5, b_6 with
pivots (2z-y-1), (2x-y+1), (2y-z+1); eliminating all three from the last
equation yields a quintic that factors as

    const * (z - y - 2/5) * F(x, y, z),

    F = y^2 (z-6)(x+6) + y (x+z)(xz+3z-3x+36) + 3xz(4x-4z-xz) - 9(x+z)^2.

``solve_8dim_given_middle`` replays that elimination for a concrete middle
triple, with every degenerate pivot branch handled exactly;
``eliminant_identity`` reproduces the factorization symbolically.  The
surface F = 0 is rationally parametrized by ``map_f`` away from three lines
and is singular exactly along the curve ``gamma_curve``.

``component_membership`` matches a point against the named components of
the dimension-8 and dimension-9 varieties, recovering parameters exactly
(quadratic-field values included).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import families
from .exactnum import ONE, ZERO, Scalar, ScalarLike, solve_quadratic
from .families import BadParamsError, FamilyLabel, family_b_vector
from .poly import MultiPoly

XYZ = ("x", "y", "z")


class BadDomainError(ValueError):
    """Input outside an operation's stated domain."""


def _sc(x: ScalarLike) -> Scalar:
    return Scalar.of(x)


def F_poly() -> MultiPoly:
    x = MultiPoly.var(XYZ, "x")
    y = MultiPoly.var(XYZ, "y")
    z = MultiPoly.var(XYZ, "z")
    return (
        y * y * (z - 6) * (x + 6)
        + y * (x + z) * (x * z + z * 3 - x * 3 + 36)
        + x * z * 3 * (x * 4 - z * 4 - x * z)
        - (x + z) * (x + z) * 9
    )


_F = F_poly()


def F_eval(x: ScalarLike, y: ScalarLike, z: ScalarLike) -> Scalar:
    return _F.eval({"x": _sc(x), "y": _sc(y), "z": _sc(z)})


def map_f(u: ScalarLike, v: ScalarLike) -> tuple[Scalar, Scalar, Scalar]:
    """(u, v) -> (6u/(v(v+1)), 6(u+1)/((v+1)(v+2)), 6(u+2)/((v+2)(v+3)))."""
    u, v = _sc(u), _sc(v)
    for i in range(4):
        if (v + i).is_zero():
            raise BadDomainError(f"v = {v} is outside the chart domain")
    return (
        u * 6 / (v * (v + 1)),
        (u + 1) * 6 / ((v + 1) * (v + 2)),
        (u + 2) * 6 / ((v + 2) * (v + 3)),
    )


def sigma_F(p: Sequence[ScalarLike]) -> tuple[Scalar, Scalar, Scalar]:
    x, y, z = (_sc(c) for c in p)
    return (-z, -y, -x)


def sigma(b: Sequence[ScalarLike]) -> tuple[Scalar, ...]:
    """The variety involution (b_1, ..., b_m) -> (-b_m, ..., -b_1)."""
    return tuple(-_sc(c) for c in reversed(list(b)))


def gamma_curve(t: ScalarLike) -> tuple[Scalar, Scalar, Scalar]:
    """The singular curve (6/t, 6/(t+1), 6/(t+2)) of the surface."""
    t = _sc(t)
    for i in range(3):
        if (t + i).is_zero():
            raise BadDomainError(f"t = {t} is a pole of the curve")
    return (_sc(6) / t, _sc(6) / (t + 1), _sc(6) / (t + 2))


def map_f_preimages(p: Sequence[ScalarLike]) -> list[tuple[Scalar, Scalar]]:
    """All (u, v) in the chart domain with map_f(u, v) = p.

    Generic surface points have one preimage; points of the singular curve
    have two.
    """
    x, y, z = (_sc(c) for c in p)
    candidates: list[tuple[Scalar, Scalar]] = []
    denom = x * z * 2 - y * (x + z)
    if x != z and not denom.is_zero():
        v = (y * z * 2 - z * x * 3 - y * 6 + x * 3 + y * x + z * 3) / denom
        candidates.append((x * (v * v + v) / 6, v))
    if x != z and denom.is_zero() and not x.is_zero():
        t = _sc(6) / x  # curve point gamma(t): two preimages
        candidates.append((t - 1, t - 1))
        candidates.append((t + 1, t))
    if x == z and not x.is_zero():
        v = (_sc(6) - x * 3) / (x * 2)
        candidates.append((x * (v * v + v) / 6, v))
    out = []
    for u, v in candidates:
        if any((v + i).is_zero() for i in range(4)):
            continue
        if map_f(u, v) == (x, y, z) and (u, v) not in out:
            out.append((u, v))
    return out


# ---------------------------------------------------------------------------
# solving the dimension-8 system for a fixed middle triple
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Affine:
    """c0 + c1 * t for the single free parameter of a solution branch."""

    c0: Scalar
    c1: Scalar = ZERO

    @property
    def is_const(self) -> bool:
        return self.c1.is_zero()

    def at(self, t: ScalarLike) -> Scalar:
        return self.c0 + self.c1 * _sc(t)

    def __str__(self) -> str:
        if self.is_const:
            return str(self.c0)
        return f"{self.c0} + ({self.c1})*t"


@dataclass(frozen=True)
class MiddleSolution:
    """One solution branch (b_1, b_5, b_6) over a fixed middle triple."""

    b1: Affine
    b5: Affine
    b6: Affine
    free: bool  # whether the parameter t is genuinely free

    def instantiate(self, t: ScalarLike = 0) -> tuple[Scalar, ...]:
        return (self.b1.at(t), self.b5.at(t), self.b6.at(t))

    def point(self, middle: tuple[Scalar, Scalar, Scalar], t: ScalarLike = 0) -> list[Scalar]:
        b1, b5, b6 = self.instantiate(t)
        return [b1, middle[0], middle[1], middle[2], b5, b6]


def solve_8dim_given_middle(
    x: ScalarLike, y: ScalarLike, z: ScalarLike
) -> list[MiddleSolution]:
    """Complete solution set of the dimension-8 system with fixed (b_2, b_3, b_4).

    Solves the three pivot equations for b_1, b_5, b_6, tracking at most one
    free parameter through the degenerate branches, then imposes the last
    relation (always affine in the free parameter).  Returns every branch;
    an empty list means the middle triple supports no module.
    """
    x, y, z = _sc(x), _sc(y), _sc(z)
    p1, q1 = z * 2 - y - 1, x * z - x * 3 + y * 3 - z
    p2, q2 = x * 2 - y + 1, x * z + x - y * 3 + z * 3
    p3 = y * 2 - z + 1

    free_slots = 0
    if not p1.is_zero():
        b1 = Affine(q1 / p1)
    elif not q1.is_zero():
        return []
    else:
        b1 = Affine(ZERO, ONE)
        free_slots += 1

    if not p2.is_zero():
        b5 = Affine(q2 / p2)
    elif not q2.is_zero():
        return []
    else:
        if free_slots:
            raise ArithmeticError("two simultaneous free pivots; unsupported middle")
        b5 = Affine(ZERO, ONE)
        free_slots += 1

    # third relation: b6 * p3 = b5 (y + 3) + y - 3z
    rhs = Affine(b5.c0 * (y + 3) + y - z * 3, b5.c1 * (y + 3))
    if not p3.is_zero():
        b6 = Affine(rhs.c0 / p3, rhs.c1 / p3)
    else:
        if not rhs.c1.is_zero():
            # the constraint fixes the previously free parameter
            tval = -rhs.c0 / rhs.c1
            b1, b5 = Affine(b1.at(tval)), Affine(b5.at(tval))
            free_slots -= 1
        elif not rhs.c0.is_zero():
            return []
        if free_slots:
            raise ArithmeticError("two simultaneous free pivots; unsupported middle")
        b6 = Affine(ZERO, ONE)
        free_slots += 1

    def last_relation(t: Scalar) -> Scalar:
        v1, v5, v6 = b1.at(t), b5.at(t), b6.at(t)
        return (
            v6 * (v1 - x * 3 + y * 3 - z)
            - v1 * (y - z * 3 + v5 * 3 - v6)
            - (v1 - x * 5 + y * 10 - z * 10 + v5 * 5 - v6) * Fraction(9, 10)
        )

    r0 = last_relation(ZERO)
    r1 = last_relation(ONE)
    coef = r1 - r0
    if free_slots == 0:
        return [MiddleSolution(b1, b5, b6, free=False)] if r0.is_zero() else []
    if coef.is_zero():
        if not r0.is_zero():
            return []
        return [MiddleSolution(b1, b5, b6, free=True)]
    tval = -r0 / coef
    return [
        MiddleSolution(
            Affine(b1.at(tval)), Affine(b5.at(tval)), Affine(b6.at(tval)), free=False
        )
    ]


def m2_branch_solutions(x: ScalarLike, y: ScalarLike) -> list[Scalar]:
    """The two-parameter component's point over (x, y) on the z = y - 2/5 branch."""
    try:
        return families.m2_b(x, y)
    except BadParamsError as e:
        raise BadDomainError(str(e)) from e


# ---------------------------------------------------------------------------
# the symbolic eliminant
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _RF:
    """num/den rational function over Q[x, y, z]; no reduction, degrees stay small."""

    num: MultiPoly
    den: MultiPoly

    def __add__(self, other: "_RF") -> "_RF":
        return _RF(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "_RF") -> "_RF":
        return _RF(self.num * other.den - other.num * self.den, self.den * other.den)

    def __mul__(self, other: "_RF") -> "_RF":
        return _RF(self.num * other.num, self.den * other.den)


def eliminant_identity() -> tuple[MultiPoly, bool, Fraction]:
    """Replay the elimination of b_1, b_5, b_6 and factor the result.

    Returns (eliminant, ok, const) where the eliminant is the cleared last
    relation, and ok records that it equals const * (z - y + 2/5) * F
    exactly (a degree-5 identity).  The linear factor vanishes precisely on
    the z = y - 2/5 branch carrying the two-parameter component.
    """
    x = MultiPoly.var(XYZ, "x")
    y = MultiPoly.var(XYZ, "y")
    z = MultiPoly.var(XYZ, "z")
    one = MultiPoly.const(XYZ, 1)

    def rf(p: MultiPoly) -> _RF:
        return _RF(p, one)

    p1, q1 = z * 2 - y - 1, x * z - x * 3 + y * 3 - z
    p2, q2 = x * 2 - y + 1, x * z + x - y * 3 + z * 3
    p3 = y * 2 - z + 1
    b1 = _RF(q1, p1)
    b5 = _RF(q2, p2)
    b6 = _RF(q2 * (y + 3) + (y - z * 3) * p2, p2 * p3)
    frac = rf(MultiPoly.const(XYZ, Fraction(9, 10)))
    e4 = (
        b6 * (b1 - rf(x * 3 - y * 3 + z))
        - b1 * (rf(y - z * 3) + b5 * rf(MultiPoly.const(XYZ, 3)) - b6)
        - frac * (b1 - rf(x * 5 - y * 10 + z * 10) + b5 * rf(MultiPoly.const(XYZ, 5)) - b6)
    )
    # clear exactly the pivot product; the leftover denominator divides out
    cleared = (e4.num * (p1 * p2 * p3)).divide_exact(e4.den)
    target = (z - y + MultiPoly.const(XYZ, Fraction(2, 5))) * _F
    te, tc = target.leading_term()
    ce, cc = cleared.leading_term()
    ok = False
    const = Fraction(0)
    if te == ce:
        const = cc / tc
        ok = cleared == target * const and cleared.total_degree() == 5
    return cleared, ok, const


# ---------------------------------------------------------------------------
# component membership
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ComponentId:
    name: str
    params: dict = field(default_factory=dict)

    def label(self) -> FamilyLabel:
        return FamilyLabel(self.name, dict(self.params))

    def __str__(self) -> str:
        inner = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.name}({inner})"


def _recover_uv(b: Sequence[Scalar]) -> list[tuple[Scalar, Scalar]]:
    """Candidate (u, v) with b_i = 6(u+i)/((v+i)(v+i+1)) for the leading entries.

    Consecutive entries give quadratics in v with u eliminated; candidates
    from the first non-degenerate quadratic are verified by the caller.
    """
    candidates: list[Scalar] = []
    for i in range(1, len(b) - 1):
        bi, bj = b[i - 1], b[i]
        c2 = bj - bi
        c1 = bj * (2 * i + 3) - bi * (2 * i + 1)
        c0 = bj * ((i + 1) * (i + 2)) - bi * (i * (i + 1)) - 6
        roots = solve_quadratic(c2, c1, c0)
        if roots is None:
            continue
        candidates = roots
        break
    out = []
    for v in candidates:
        bad = any((v + i).is_zero() for i in range(1, len(b) + 2))
        if bad:
            continue
        u = b[0] * (v + 1) * (v + 2) / 6 - 1
        out.append((u, v))
    return out


def _matches(point: Sequence[Scalar], tag: str, params: dict) -> bool:
    try:
        return list(point) == family_b_vector(FamilyLabel(tag, params), len(point) + 2)
    except BadParamsError:
        return False


def component_membership(point: Sequence[ScalarLike]) -> list[ComponentId]:
    """All named components (with recovered parameters) containing the point.

    Works for dimension 8 (six coordinates) and dimension 9 (seven).  The
    returned list reproduces the documented component intersections.
    """
    b = [_sc(c) for c in point]
    if len(b) == 6:
        prefix, dim = "M", 8
    elif len(b) == 7:
        prefix, dim = "tM", 9
    else:
        raise BadDomainError("variety points have 6 or 7 coordinates")
    found: list[ComponentId] = []

    for u, v in _recover_uv(b):
        if u != v and u != v + 1 and _matches(b, prefix + "1", {"u": u, "v": v}):
            found.append(ComponentId(prefix + "1", {"u": u, "v": v}))
    if not b[0].is_zero():
        v0 = _sc(6) / b[0] - 1
        if _matches(b, prefix + "1_0", {"v": v0}):
            found.append(ComponentId(prefix + "1_0", {"v": v0}))
    if dim == 8:
        if _matches(b, "M2", {"x": b[1], "y": b[2]}):
            found.append(ComponentId("M2", {"x": b[1], "y": b[2]}))
    else:
        if _matches(b, "tM2", {"y": b[3]}):
            found.append(ComponentId("tM2", {"y": b[3]}))
    if all(c == b[0] for c in b):
        found.append(ComponentId(prefix + "3", {"t": b[0]}))
    if dim == 8:
        for sign, name in ((+1, "M4+"), (-1, "M4-")):
            ref = families.m4_b(sign, 0)
            if b[:4] == ref[:4]:
                t = b[4] - ref[4]
                if _matches(b, name, {"t": t}):
                    found.append(ComponentId(name, {"t": t}))
    for name, slot in ((prefix + "5+", 0), (prefix + "5-", len(b) - 1), (prefix + "6+", 0)):
        t = b[slot]
        if _matches(b, name, {"t": t}):
            found.append(ComponentId(name, {"t": t}))
    t = -b[-1]
    if _matches(b, prefix + "6-", {"t": t}):
        found.append(ComponentId(prefix + "6-", {"t": t}))
    return found


# ---------------------------------------------------------------------------
# exact intersection loci used by the uniqueness audit
# ---------------------------------------------------------------------------

UV = ("u", "v")


def m1_meets_m2_criterion() -> tuple[MultiPoly, bool]:
    """The locus of M1 points on the z = y - 2/5 branch, checked symbolically.

    Clearing denominators from b_4 - b_3 + 2/5 = 0 over the (u, v) chart
    gives -60u + 30(v-3) + 2(v+3)(v+4)(v+5) = 0, i.e.
    u = (1/30)(v+3)(v+4)(v+5) + (1/2)(v-3).
    """
    u = MultiPoly.var(UV, "u")
    v = MultiPoly.var(UV, "v")
    # b_i = 6(u+i)/((v+i)(v+i+1)); clear 5(v+3)(v+4)(v+5)/2 from b4 - b3 + 2/5
    cleared = (
        (u + 4) * (v + 3) * 30 - (u + 3) * (v + 5) * 30 + (v + 3) * (v + 4) * (v + 5) * 2
    )
    stated = (
        (v + 3) * (v + 4) * (v + 5) * 2 + (v - 3) * 30 - u * 60
    )
    target = (v + 3) * (v + 4) * (v + 5) * Fraction(1, 30) + (v - 3) * Fraction(1, 2) - u
    ok = cleared == stated and cleared == target * 60
    return cleared, ok


def univariate_roots(coeffs: list[Fraction]) -> tuple[list[Scalar], bool]:
    """Exact roots of a rational univariate polynomial (low degree).

    Strips rational roots by exhaustive divisor search, then solves a
    leftover factor of degree <= 2 exactly.  Returns (roots, complete):
    ``complete`` is False when an irreducible factor of degree > 2 remains,
    in which case only the found roots are returned.
    """
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        raise ValueError("the zero polynomial has every root")
    roots: list[Scalar] = []
    # factor out powers of the variable
    low = 0
    while low < len(cs) and cs[low] == 0:
        low += 1
    if low:
        roots.append(ZERO)
        cs = cs[low:]

    def divisors(n: int) -> list[int]:
        n = abs(n)
        out = [d for d in range(1, n + 1) if n % d == 0]
        return out or [1]

    changed = True
    while len(cs) > 3 and changed:
        changed = False
        lead, trail = cs[-1], cs[0]
        cands = [
            Fraction(s * p, q)
            for p in divisors(trail.numerator * trail.denominator)
            for q in divisors(lead.numerator * lead.denominator)
            for s in (1, -1)
        ]
        for r in dict.fromkeys(cands):
            if sum(c * r**i for i, c in enumerate(cs)) == 0:
                roots.append(_sc(r))
                # deflate by (x - r): Horner from the top coefficient down
                q = [Fraction(0)] * (len(cs) - 1)
                q[-1] = cs[-1]
                for i in range(len(cs) - 2, 0, -1):
                    q[i - 1] = cs[i] + r * q[i]
                cs = q
                changed = True
                break
    if len(cs) == 1:
        return roots, True
    if len(cs) == 2:
        roots.append(_sc(-cs[0] / cs[1]))
        return roots, True
    if len(cs) == 3:
        qs = solve_quadratic(_sc(cs[2]), _sc(cs[1]), _sc(cs[0]))
        if qs is not None:
            roots.extend(qs)
        return roots, True
    return roots, False


def tm2_meets_tm1_locus() -> tuple[list[Scalar], bool]:
    """The exact parameter values where the dimension-9 one-parameter branch
    component meets the two-parameter density component.

    Eliminates u and v from the membership equations symbolically; the
    resulting univariate condition is solved exactly.  Each candidate is
    confirmed by full membership, so the returned list is the whole locus
    iff ``complete`` is True.
    """
    YV = ("Y", "v")
    Y = MultiPoly.var(YV, "Y")
    v = MultiPoly.var(YV, "v")

    f = Fraction
    # centered entries are polynomials in Y: b3 = Y + 2/5, b4 = Y, b5 = Y - 2/5
    # membership: b_i (v+i)(v+i+1) = 6(u+i); eliminate u through b4
    def entry_times(i: int, poly_b: MultiPoly) -> MultiPoly:
        return poly_b * (v + i) * (v + i + 1)

    e3 = entry_times(3, Y + f(2, 5))
    e4 = entry_times(4, Y)
    e5 = entry_times(5, Y - f(2, 5))
    # u + i = e_i / 6, so consecutive differences must equal 6
    g4 = e4 - e3 - 6
    g5 = e5 - e4 - 6

    def v_coeffs(p: MultiPoly) -> list[MultiPoly]:
        # p as polynomial in v with coefficients in Q[Y]
        out = [MultiPoly.zero(YV) for _ in range(3)]
        for e, c in p.terms.items():
            yk, vk = e
            out[vk] = out[vk] + MultiPoly(YV, {(yk, 0): c})
        return out

    a0, a1, a2 = v_coeffs(g4)
    b0, b1, b2 = v_coeffs(g5)
    lin1 = a1 * b2 - b1 * a2  # coefficient of v after killing v^2
    lin0 = a0 * b2 - b0 * a2
    # v = -lin0/lin1; substitute into g4 cleared by lin1^2
    k_poly = a2 * lin0 * lin0 - a1 * lin0 * lin1 + a0 * lin1 * lin1
    coeffs: dict[int, Fraction] = {}
    for e, c in k_poly.terms.items():
        if e[1] != 0:
            raise ArithmeticError("variable v survived the elimination")
        coeffs[e[0]] = coeffs.get(e[0], Fraction(0)) + c
    dense = [coeffs.get(i, Fraction(0)) for i in range(max(coeffs) + 1)]
    roots, complete = univariate_roots(dense)
    confirmed: list[Scalar] = []
    for y in roots:
        if y in confirmed:
            continue
        try:
            pt = families.tm2_b(y)
        except BadParamsError:
            continue
        if any(c.name == "tM1" for c in component_membership(pt)):
            confirmed.append(y)
    return confirmed, complete
