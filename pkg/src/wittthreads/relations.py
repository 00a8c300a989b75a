"""Residual systems of the defining relations, zero propagation, extensions.

Three views of the same relations live here and in :mod:`witt`:

* ``r5_r7_residuals``: the hand-written closed forms valid when no alpha
  vanishes (the classical quadratic system in the b-coordinates);
* ``specialized_residuals``: residual polynomials derived mechanically for
  *any* 0/1 alpha pattern by running the operator recursion with symbolic
  b-entries, then evaluated.  Where alphas vanish this reproduces the
  zero-adapted systems (only cross products of the boundary b's survive);
* :func:`wittthreads.witt.benoist_residuals` on the generated table.

All three must agree on whether a defining set is a genuine action; tests
enforce that equivalence.

``extend_right``/``extend_left`` solve the one-step extension problem: the
appended constant enters every new residual affinely, so the solution set
is empty, a single value, or a free parameter.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import modulecore, witt
from .exactnum import ONE, ZERO, Scalar, ScalarLike, solve_quadratic
from .modulecore import DefiningSet, ZeroPattern
from .poly import MultiPoly


@dataclass(frozen=True)
class ResidualReport:
    """All relation residuals of one defining set, indexed by (system, position)."""

    entries: tuple[tuple[str, int, Scalar], ...]

    @property
    def all_zero(self) -> bool:
        return all(r.is_zero() for _, _, r in self.entries)

    def nonzero(self) -> list[tuple[str, int, Scalar]]:
        return [e for e in self.entries if not e[2].is_zero()]


def r5_r7_residuals(b: Sequence[ScalarLike]) -> ResidualReport:
    """Closed-form residuals for the no-zero pattern (b-coordinates).

    R5_i:  b_{i+3}(b_i - b_{i+1}) - b_i(b_{i+2} - b_{i+3})
             - (b_i - 3b_{i+1} + 3b_{i+2} - b_{i+3})
    R7_j:  b_{j+5}(b_j - 3b_{j+1} + 3b_{j+2} - b_{j+3})
             - b_j(b_{j+2} - 3b_{j+3} + 3b_{j+4} - b_{j+5})
             - 9/10 (b_j - 5b_{j+1} + 10b_{j+2} - 10b_{j+3} + 5b_{j+4} - b_{j+5})
    """
    bs = [Scalar.of(x) for x in b]
    L = len(bs)

    def B(i: int) -> Scalar:
        return bs[i - 1]

    entries = []
    for i in range(1, L - 2):
        r = (
            B(i + 3) * (B(i) - B(i + 1))
            - B(i) * (B(i + 2) - B(i + 3))
            - (B(i) - B(i + 1) * 3 + B(i + 2) * 3 - B(i + 3))
        )
        entries.append(("R5", i, r))
    for j in range(1, L - 4):
        r = (
            B(j + 5) * (B(j) - B(j + 1) * 3 + B(j + 2) * 3 - B(j + 3))
            - B(j) * (B(j + 2) - B(j + 3) * 3 + B(j + 4) * 3 - B(j + 5))
            - (
                B(j)
                - B(j + 1) * 5
                + B(j + 2) * 10
                - B(j + 3) * 10
                + B(j + 4) * 5
                - B(j + 5)
            )
            * Fraction(9, 10)
        )
        entries.append(("R7", j, r))
    return ResidualReport(tuple(entries))


# ---------------------------------------------------------------------------
# symbolic residual systems for arbitrary 0/1 alpha patterns
# ---------------------------------------------------------------------------


def _b_vars(n_plus_1: int) -> tuple[str, ...]:
    return tuple(f"b{j}" for j in range(1, n_plus_1 - 1))


def relation_system(
    alpha: Sequence[ScalarLike], n_plus_1: int
) -> dict[tuple[str, int], MultiPoly]:
    """Residual polynomials in the symbolic b-entries for a fixed alpha pattern.

    Runs the same operator recursion as table generation, with the second
    row symbolic.  The alpha entries must be rational (0/1 patterns in
    practice); the output maps (system id, index) to a polynomial over Q.
    Systems are cached per pattern.
    """
    avals = [Scalar.of(a) for a in alpha]
    key = tuple(a.rational for a in avals)
    cached = _SYSTEM_CACHE.get((key, n_plus_1))
    if cached is None:
        cached = _build_relation_system(avals, n_plus_1)
        _SYSTEM_CACHE[(key, n_plus_1)] = cached
    return cached


_SYSTEM_CACHE: dict = {}


def _build_relation_system(
    avals: list[Scalar], n_plus_1: int
) -> dict[tuple[str, int], MultiPoly]:
    variables = _b_vars(n_plus_1)
    if len(avals) != n_plus_1 - 1:
        raise ValueError("alpha length does not match the dimension")
    row1 = [MultiPoly.const(variables, a.rational) for a in avals]
    row2 = [MultiPoly.var(variables, v) for v in variables]
    rows = [row1, row2]
    for i in range(2, min(n_plus_1, 7)):  # rows above 7 never enter the relations
        prev = rows[-1]
        width = n_plus_1 - (i + 1)
        if width <= 0:
            break
        rows.append(
            [
                row1[m + i - 1] * prev[m - 1] - prev[m] * row1[m - 1]
                for m in range(1, width + 1)
            ]
        )

    def C(i: int, m: int) -> MultiPoly:
        if i + m > n_plus_1 or i - 1 >= len(rows):
            return MultiPoly.zero(variables)
        return rows[i - 1][m - 1]

    out: dict[tuple[str, int], MultiPoly] = {}
    for m in range(1, n_plus_1 - 4):
        out[("R5", m)] = C(2, m + 3) * C(3, m) - C(3, m + 2) * C(2, m) - C(5, m)
    for m in range(1, n_plus_1 - 6):
        out[("R7", m)] = (
            C(2, m + 5) * C(5, m) - C(5, m + 2) * C(2, m) - C(7, m) * Fraction(9, 10)
        )
    return out


def _point_of(b: Sequence[Scalar]) -> dict[str, Scalar]:
    return {f"b{j}": Scalar.of(x) for j, x in enumerate(b, start=1)}


def specialized_residuals(
    pattern: ZeroPattern | Sequence[ScalarLike], b: Sequence[ScalarLike]
) -> ResidualReport:
    """Residuals of the zero-adapted systems for the given alpha pattern.

    ``pattern`` is either a ZeroPattern (its zeros are placed in an
    otherwise-ones alpha list) or an explicit alpha list.
    """
    bs = [Scalar.of(x) for x in b]
    n_plus_1 = len(bs) + 2
    if isinstance(pattern, ZeroPattern):
        alpha = [ZERO if (i in pattern.zeros) else ONE for i in range(1, n_plus_1)]
    else:
        alpha = [Scalar.of(a) for a in pattern]
    system = relation_system(alpha, n_plus_1)
    point = _point_of(bs)
    entries = tuple(
        (sid, idx, poly.eval(point)) for (sid, idx), poly in sorted(system.items())
    )
    return ResidualReport(entries)


def residual_report(ds: DefiningSet) -> ResidualReport:
    """Specialized residuals of a defining set (normalized first if needed)."""
    nds, _ = modulecore.normalize(ds)
    return specialized_residuals(nds.alpha, nds.beta_or_b)


# ---------------------------------------------------------------------------
# zero propagation
# ---------------------------------------------------------------------------


def forced_zero_set(alpha: Sequence[ScalarLike]) -> set[tuple[int, int]]:
    """Coefficients (i, m) that the bracket recursion alone forces to vanish.

    If alpha_k = alpha_{k+p} = 0 with p >= 2 then the recursion kills
    (generator i) f_m for every i >= k + p and m <= k, whatever the second
    row is.  Adjacent zeros force nothing.  Only pairs (i, m) with
    i + m <= n+1 are reported.
    """
    avals = [Scalar.of(a) for a in alpha]
    n_plus_1 = len(avals) + 1
    zeros = [i + 1 for i, a in enumerate(avals) if a.is_zero()]
    forced: set[tuple[int, int]] = set()
    for k in zeros:
        for kp in zeros:
            if kp - k < 2:
                continue
            for i in range(kp, n_plus_1):
                for m in range(1, min(k, n_plus_1 - i) + 1):
                    forced.add((i, m))
    return forced


# ---------------------------------------------------------------------------
# one-step extensions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Extension:
    """One admissible value of the appended constant; ``free`` means any value."""

    value: Optional[Scalar]
    free: bool = False

    def __str__(self) -> str:
        return "free" if self.free else str(self.value)


def _solve_affine_probes(coeffs: list[tuple[Scalar, Scalar]]) -> list[Extension]:
    """Common solution set of affine equations c*t + r0 = 0."""
    target: Optional[Scalar] = None
    for c, r0 in coeffs:
        if c.is_zero():
            if not r0.is_zero():
                return []
        else:
            t = -r0 / c
            if target is None:
                target = t
            elif target != t:
                return []
    if target is None:
        return [Extension(None, free=True)]
    return [Extension(target)]


def _probe_new_entry(
    alpha: list[Scalar], known: dict[str, Scalar], var: str
) -> list[Extension]:
    """Solve every residual of the enlarged set; each is affine in the new entry."""
    system = relation_system(alpha, len(alpha) + 1)
    p0 = dict(known)
    p1 = dict(known)
    p0[var] = ZERO
    p1[var] = ONE
    coeffs = []
    for poly in system.values():
        r0 = poly.eval(p0)
        coeffs.append((poly.eval(p1) - r0, r0))
    return _solve_affine_probes(coeffs)


def extend_right(ds: DefiningSet) -> list[Extension]:
    """All values of the appended top constant keeping every relation satisfied.

    The module grows by one basis vector on top; the new degree-1 constant
    is 1 (the zero pattern is preserved) and the new top b-entry is solved
    for exactly.  Empty list: not extendable.  A ``free`` extension means
    the appended equations impose no constraint.
    """
    nds, _ = modulecore.normalize(ds)
    n = nds.n_plus_1 - 1
    alpha = list(nds.alpha) + [ONE]
    known = _point_of(list(nds.beta_or_b))
    return _probe_new_entry(alpha, known, f"b{n}")


def extend_left(ds: DefiningSet) -> list[Extension]:
    """Mirror of ``extend_right``: prepend a basis vector below the thread."""
    nds, _ = modulecore.normalize(ds)
    alpha = [ONE] + list(nds.alpha)
    known = {f"b{j + 1}": x for j, x in _enumerate1(nds.beta_or_b)}
    return _probe_new_entry(alpha, known, "b1")


def _enumerate1(xs):
    return [(j + 1, x) for j, x in enumerate(xs)]


def extended_set(
    ds: DefiningSet, ext: Extension, direction: str, free_value: ScalarLike = 0
) -> DefiningSet:
    """Materialize an extension as a defining set (free slots take ``free_value``)."""
    nds, _ = modulecore.normalize(ds)
    val = Scalar.of(free_value) if ext.free else ext.value
    if direction == "right":
        return DefiningSet(
            nds.n_plus_1 + 1, witt.TILDE, (*nds.alpha, ONE), (*nds.beta_or_b, val)
        )
    if direction == "left":
        return DefiningSet(
            nds.n_plus_1 + 1, witt.TILDE, (ONE, *nds.alpha), (val, *nds.beta_or_b)
        )
    raise ValueError("direction must be 'right' or 'left'")


# ---------------------------------------------------------------------------
# exhaustive solving for the two-adjacent-zeros type at desk scale
# ---------------------------------------------------------------------------


def _poly_support(p: MultiPoly) -> set[str]:
    out: set[str] = set()
    for e in p.terms:
        for v, k in zip(p.variables, e):
            if k:
                out.add(v)
    return out


def _resolve(sub: dict[str, MultiPoly], variables: tuple[str, ...]) -> dict[str, MultiPoly]:
    """Iterate the substitution until no solved variable appears on a right side."""
    for _ in range(len(variables) + 1):
        changed = False
        for v, expr in list(sub.items()):
            if _poly_support(expr) & sub.keys():
                sub[v] = expr.subst(sub)
                changed = True
        if not changed:
            return sub
    raise ArithmeticError("cyclic substitution while resolving a solution")


def _solve_system(
    system: list[MultiPoly], variables: tuple[str, ...], seed: dict[str, Scalar]
) -> list[dict[str, Scalar]]:
    """All completions of ``seed`` solving every polynomial, by elimination.

    Solved variables are stored as polynomials in the not-yet-solved ones
    and substituted through; equations that collapse to a univariate
    polynomial of degree <= 2 are solved exactly (branching on two roots).
    Raises if the system wanders outside that fragment - the adjacent-zeros
    systems never do.
    """
    sub: dict[str, MultiPoly] = {}
    for v, s in seed.items():
        if s.d != 0:
            raise ArithmeticError("exhaustive solver works over the rationals")
        sub[v] = MultiPoly.const(variables, s.a)

    while True:
        sub = _resolve(sub, variables)
        remaining = [p.subst(sub) for p in system]
        remaining = [p for p in remaining if not p.is_zero()]
        if not remaining:
            break
        progress = False
        for p in remaining:
            support = _poly_support(p) - sub.keys()
            if not support:
                return []  # nonzero constant equation
            if len(support) > 1:
                continue
            (x,) = support
            # coefficients of x^0, x^1, x^2 as polynomials in the others
            zero = MultiPoly.const(variables, 0)
            one = MultiPoly.const(variables, 1)
            c0 = p.subst({x: zero})
            f1 = p.subst({x: one})
            fm = p.subst({x: MultiPoly.const(variables, -1)})
            c2 = (f1 + fm - c0 * 2) * Fraction(1, 2)
            c1 = (f1 - fm) * Fraction(1, 2)
            others = (_poly_support(c0) | _poly_support(c1) | _poly_support(c2)) - sub.keys()
            if others:
                continue  # coefficients still involve free variables
            a2, a1, a0 = (
                Scalar.of(next(iter(c.terms.values()), Fraction(0))) for c in (c2, c1, c0)
            )
            roots = solve_quadratic(a2, a1, a0)
            if roots is None:
                continue  # identically satisfied in x
            if not roots:
                return []
            if any(r.d != 0 for r in roots):
                raise ArithmeticError("solver hit a root outside the rationals")
            if len(roots) == 1:
                sub[x] = MultiPoly.const(variables, roots[0].a)
                progress = True
                break
            results: list[dict[str, Scalar]] = []
            for r in roots:
                branch = dict(seed)
                branch[x] = Scalar.of(r.a)
                results.extend(_solve_system(system, variables, branch))
            return _dedupe(results)
        if not progress:
            # no univariate equation: eliminate through an equation linear in
            # some variable with a constant nonzero coefficient
            for p in remaining:
                support = sorted(_poly_support(p) - sub.keys())
                for x in support:
                    zero = MultiPoly.const(variables, 0)
                    c0 = p.subst({x: zero})
                    c1 = p.subst({x: MultiPoly.const(variables, 1)}) - c0
                    cm = p.subst({x: MultiPoly.const(variables, -1)}) - c0
                    if not (c1 + cm).is_zero():
                        continue  # degree 2 in x
                    if _poly_support(c1):
                        continue  # non-constant leading coefficient
                    lead = next(iter(c1.terms.values()), Fraction(0))
                    if lead == 0:
                        continue
                    sub[x] = c0 * (Fraction(-1) / lead)
                    progress = True
                    break
                if progress:
                    break
        if not progress:
            raise ArithmeticError("exhaustive solver stuck outside its fragment")

    sub = _resolve(sub, variables)
    out: dict[str, Scalar] = {}
    for v in variables:
        if v not in sub:
            raise ArithmeticError(f"solution family with free coordinate {v}")
        expr = sub[v]
        if _poly_support(expr):
            raise ArithmeticError(f"unresolved coordinate {v}")
        out[v] = Scalar.of(expr.terms.get((0,) * len(variables), Fraction(0)))
    for p in system:
        if not p.eval(out).is_zero():
            return []
    return [out]


def _dedupe(sols: list[dict[str, Scalar]]) -> list[dict[str, Scalar]]:
    seen: list[dict[str, Scalar]] = []
    for s in sols:
        if s not in seen:
            seen.append(s)
    return seen


def exhaustive_adjacent_zero_solutions(n_plus_1: int, k: int) -> list[DefiningSet]:
    """Every indecomposable thread with zeros exactly at (k, k+1), up to rescaling.

    Enumerates the two boundary gauge classes (cross pattern scaled to
    (1, 1, solved) or (0, 1, 1)), solves the full residual system exactly,
    and filters out decomposable solutions.
    """
    n = n_plus_1 - 1
    if not 1 <= k <= n - 1:
        raise ValueError(f"zero pair position {k} outside 1..{n - 1}")
    alpha = [ZERO if i in (k, k + 1) else ONE for i in range(1, n_plus_1)]
    variables = _b_vars(n_plus_1)
    system = list(relation_system(alpha, n_plus_1).values())
    cases: list[dict[str, Scalar]] = []
    if k >= 2:
        cases.append({f"b{k - 1}": ONE, f"b{k}": ONE})
        if k + 1 <= n - 1:
            cases.append({f"b{k - 1}": ZERO, f"b{k}": ONE, f"b{k + 1}": ONE})
    else:
        cases.append({"b1": ONE, "b2": ONE})
    out: list[DefiningSet] = []
    for case in cases:
        for sol in _solve_system(system, variables, case):
            b = [sol[v] for v in variables]
            ds = DefiningSet(n_plus_1, witt.TILDE, tuple(alpha), tuple(b))
            if modulecore.decompose(ds) is not None:
                continue
            prev = b[k - 2] if k >= 2 else ZERO
            nxt = b[k] if k <= len(b) - 1 else ZERO
            if prev.is_zero() and nxt.is_zero():
                continue  # the middle vector splits off
            out.append(ds)
    return out
