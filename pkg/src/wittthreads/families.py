"""Closed-form constructors for every named thread-module family.

Families come in three groups, keyed by the zero pattern of the degree-1
action:

* no zeros: the density quotients V(u, v), the two-constant modules C(x),
  and four one-parameter deformations of special density quotients;
* one zero at position k: density quotients with a zero (tag ``Vq``,
  parameters lambda and k), their one-parameter deformations ``D1``/``D0``,
  and four rigid "tilde" modules at k = 1 or k = n;
* two adjacent zeros at (k, k+1): the glued modules R_k and their duals.

Separate from the classification families, the components of the variety of
8- and 9-dimensional no-zero modules (tags ``M*`` and ``tM*``) are also
constructed here.

All constructors emit tilde-normalized defining sets.  Deformed families
additionally expose their full action tables in the standard basis
(``deformed_action``), built from independent closed-form coefficient
formulas; tests cross-check the two descriptions against each other.

Parameter conventions follow the classification tables: deformation slots
hold the tabulated value (e.g. the top family stores b_{n-1} = -t), so a
label's parameters can be read back off the constructed set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import witt
from .exactnum import ONE, ZERO, Scalar, ScalarLike, format_scalar, parse_scalar
from .modulecore import DefiningSet


class BadParamsError(ValueError):
    """Family parameters outside the family's stated domain."""


def _frac(p: int, q: int = 1) -> Scalar:
    return Scalar.of(Fraction(p, q))


def _sc(x: ScalarLike) -> Scalar:
    return Scalar.of(x)


SQRT19 = Scalar.sqrt_of(19)


@dataclass(frozen=True)
class FamilyLabel:
    tag: str
    params: dict = field(default_factory=dict)

    def __str__(self) -> str:
        return label_to_string(self)


# ---------------------------------------------------------------------------
# type (1,1,...,1): b-vectors of length n-1
# ---------------------------------------------------------------------------


def vlm_b(u: ScalarLike, v: ScalarLike, n_plus_1: int) -> list[Scalar]:
    """b_i = 6(u+i) / ((v+i)(v+i+1)); needs v + i nonzero for i = 1..n."""
    u, v = _sc(u), _sc(v)
    n = n_plus_1 - 1
    for i in range(1, n + 1):
        if (v + i).is_zero():
            raise BadParamsError(f"v = {v} makes the no-zero density quotient degenerate")
    return [(u + i) * 6 / ((v + i) * (v + i + 1)) for i in range(1, n)]


def c_b(x: ScalarLike, n_plus_1: int) -> list[Scalar]:
    return [_sc(x)] * (n_plus_1 - 2)


def vt23_b(t: ScalarLike, n_plus_1: int) -> list[Scalar]:
    """Deformation of V(u=3, v=1) in the first slot; t = 4 is the undeformed point."""
    n = n_plus_1 - 1
    return [_sc(t)] + [_frac(6 * (i + 3), (i + 1) * (i + 2)) for i in range(2, n)]


def vt01_b(t: ScalarLike, n_plus_1: int) -> list[Scalar]:
    """Deformation of V(u=1, v=0) in the first slot; t = 6 is the undeformed point."""
    n = n_plus_1 - 1
    return [_sc(t)] + [_frac(6, i) for i in range(2, n)]


def vt13n_b(t: ScalarLike, n_plus_1: int) -> list[Scalar]:
    """Dual partner of vt23: deformed in the last slot, b_{n-1} = -t."""
    n = n_plus_1 - 1
    out = [-_frac(6 * (n - i + 3), (n - i + 1) * (n - i + 2)) for i in range(1, n - 1)]
    return out + [-_sc(t)]


def vt12n_b(t: ScalarLike, n_plus_1: int) -> list[Scalar]:
    """Dual partner of vt01: deformed in the last slot, b_{n-1} = -t."""
    n = n_plus_1 - 1
    return [-_frac(6, n - i) for i in range(1, n - 1)] + [-_sc(t)]


# ---------------------------------------------------------------------------
# type (1,...,1,0,1,...,1): zero at k
# ---------------------------------------------------------------------------


def vq_b(lam: ScalarLike, k: int, n_plus_1: int) -> list[Scalar]:
    """Density quotient with a zero at k (name V_{lambda, 2 lambda - k}).

    The two cross-boundary entries are gauged to (6(lambda+1), -6 lambda);
    for k = n only the first exists and is gauged to -6(lambda+1) to match
    the tabulated convention.
    """
    lam = _sc(lam)
    n = n_plus_1 - 1
    if not 1 <= k <= n:
        raise BadParamsError(f"zero position k = {k} outside 1..{n}")
    out: list[Scalar] = []
    for j in range(1, n):
        if j < k - 1:
            out.append((_sc(j - k) - lam) * 6 / _frac((j - k) * (j - k + 1)))
        elif j == k - 1:
            out.append((lam + 1) * 6 if k < n else -(lam + 1) * 6)
        elif j == k:
            out.append(-lam * 6)
        else:
            out.append((_sc(j - k) - lam) * 6 / _frac((j - k) * (j - k + 1)))
    return out


def d1_b(k: int, t: ScalarLike, n_plus_1: int) -> list[Scalar]:
    """Deformation of the lambda = -1 quotient at zero k, slot b_{k+1} = t.

    Exists for 1 <= k <= n-2; t = 6 is the undeformed point.
    """
    n = n_plus_1 - 1
    if not 1 <= k <= n - 2:
        raise BadParamsError(f"deformed (lambda = -1) family needs 1 <= k <= {n - 2}")
    out: list[Scalar] = []
    for j in range(1, n):
        if j < k - 1:
            out.append(-_frac(6, k - j))
        elif j == k - 1:
            out.append(ZERO)
        elif j == k:
            out.append(_frac(6))
        elif j == k + 1:
            out.append(_sc(t))
        else:
            out.append(_frac(6, j - k))
    return out


def d0_b(k: int, t: ScalarLike, n_plus_1: int) -> list[Scalar]:
    """Deformation of the lambda = 0 quotient at zero k, slot b_{k-2} = t.

    Exists for 3 <= k <= n; t = -6 is the undeformed point.  Dual to d1 with
    mirrored zero and negated parameter.
    """
    n = n_plus_1 - 1
    if not 3 <= k <= n:
        raise BadParamsError(f"deformed (lambda = 0) family needs 3 <= k <= {n}")
    out: list[Scalar] = []
    for j in range(1, n):
        if j <= k - 3:
            out.append(-_frac(6, k - 1 - j))
        elif j == k - 2:
            out.append(_sc(t))
        elif j == k - 1:
            out.append(-_frac(6))
        elif j == k:
            out.append(ZERO)
        else:
            out.append(_frac(6, j - k + 1))
    return out


def tv01_b(n_plus_1: int) -> list[Scalar]:
    """Rigid module at k = 1 with b_j = 6/j (the value 6 at the zero is gauge)."""
    return [_frac(6, j) for j in range(1, n_plus_1 - 1)]


def tv23_b(n_plus_1: int) -> list[Scalar]:
    """Rigid module at k = 1 with the (u=3, v=1) tail."""
    return [_frac(6)] + [_frac(6 * (j + 3), (j + 1) * (j + 2)) for j in range(2, n_plus_1 - 1)]


# ---------------------------------------------------------------------------
# type (1,...,1,0,0,1,...,1): zeros at (k, k+1)
# ---------------------------------------------------------------------------


def rk_b(k: int, n_plus_1: int) -> list[Scalar]:
    """Glued module R_k: cross pattern (1, 1, 0) around the zeros at (k, k+1)."""
    n = n_plus_1 - 1
    if not 1 <= k <= n - 1:
        raise BadParamsError(f"adjacent zeros at ({k},{k + 1}) need 1 <= k <= {n - 1}")
    out: list[Scalar] = []
    for j in range(1, n):
        if j <= k - 2:
            out.append(-_frac(6, k - j))
        elif j in (k - 1, k):
            out.append(ONE)
        elif j == k + 1:
            out.append(ZERO)
        else:
            out.append(_frac(6, j - k))
    return out


def rkdual_b(k: int, n_plus_1: int) -> list[Scalar]:
    """Dual of R_k in normalized gauge: zeros at (n-k, n-k+1), pattern (0, 1, 1)."""
    n = n_plus_1 - 1
    if not 1 <= k <= n - 1:
        raise BadParamsError(f"dual glued module needs 1 <= k <= {n - 1}")
    m = n - k  # first zero position of the dual
    out: list[Scalar] = []
    for j in range(1, n):
        if j <= m - 2:
            out.append(-_frac(6, m - j))
        elif j == m - 1:
            out.append(ZERO)
        elif j in (m, m + 1):
            out.append(ONE)
        else:
            out.append(_frac(6, j - m))
    return out


def tilde_vgr_truncation(k: int, n_plus_1: int) -> DefiningSet:
    """Finite subquotient of the glued infinite thread with zeros at (k, k+1).

    For k >= 2 this is R_k.  At k = 1 the (1,1,0) pattern is decomposable and
    the unique indecomposable truncation is the mirrored (0,1,1) pattern,
    i.e. the dual of R_{n-1}.
    """
    n = n_plus_1 - 1
    if not 1 <= k <= n - 1:
        raise BadParamsError(f"zero pair position k = {k} outside 1..{n - 1}")
    if k == 1:
        return make_family(FamilyLabel("RkDual", {"k": n - 1}), n_plus_1)
    return make_family(FamilyLabel("Rk", {"k": k}), n_plus_1)


# ---------------------------------------------------------------------------
# variety components in dimensions 8 and 9
# ---------------------------------------------------------------------------


def _m1(u: ScalarLike, v: ScalarLike, length: int) -> list[Scalar]:
    u, v = _sc(u), _sc(v)
    for i in range(1, length + 2):
        if (v + i).is_zero():
            raise BadParamsError(f"v = {v} outside the component domain")
    if u == v or u == v + 1:
        raise BadParamsError("u = v and u = v+1 belong to the one-parameter component")
    return [(u + i) * 6 / ((v + i) * (v + i + 1)) for i in range(1, length + 1)]


def _m1_0(v: ScalarLike, length: int) -> list[Scalar]:
    v = _sc(v)
    for i in range(1, length + 1):
        if (v + i).is_zero():
            raise BadParamsError(f"v = {v} outside the component domain")
    return [_frac(6) / (v + i) for i in range(1, length + 1)]


def m2_b(x: ScalarLike, y: ScalarLike) -> list[Scalar]:
    """Two-parameter dimension-8 component on the branch b_4 = b_3 - 2/5."""
    x, y = _sc(x), _sc(y)
    if y == _frac(9, 5) or y == -_frac(7, 5) or (x * 2 - y + 1).is_zero():
        raise BadParamsError("(x, y) outside the two-parameter component domain")
    b1 = (x * y * 5 - x * 17 + y * 10 + 2) / (y * 5 - 9)
    b5 = (x * y * 5 + x * 3 - 6) / ((x * 2 - y + 1) * 5)
    b6 = (x * y * y * 5 - x * y * 2 - y * 22 + y * y * 10 + x * 21 - 12) / (
        (x * 2 - y + 1) * (y * 5 + 7)
    )
    return [b1, x, y, y - _frac(2, 5), b5, b6]


def m4_b(sign: int, t: ScalarLike) -> list[Scalar]:
    """Surd dimension-8 component; sign is +1 or -1 for the two conjugate branches."""
    t = _sc(t)
    s = SQRT19 if sign > 0 else -SQRT19
    return [
        s * 3 + 12,
        s * Fraction(1, 5) - Fraction(2, 5),
        s * Fraction(2, 5) + Fraction(1, 5),
        s * Fraction(2, 5) - Fraction(1, 5),
        s * Fraction(1, 5) + Fraction(2, 5) + t,
        s * 3 - 12 + t * (s * Fraction(4, 3) - Fraction(13, 3)),
    ]


def tm2_b(y: ScalarLike) -> list[Scalar]:
    """One-parameter dimension-9 component centered at b_4 = y."""
    y = _sc(y)
    for bad in (Fraction(9, 5), Fraction(7, 5), Fraction(-9, 5), Fraction(-7, 5)):
        if y == _sc(bad):
            raise BadParamsError("y outside the component domain")
    f = Fraction
    return [
        (y - f(3, 5)) * (y + f(3, 5)) * (y - 2) / ((y - f(9, 5)) * (y - f(7, 5))),
        (y - f(8, 5)) * (y + f(3, 5)) / (y - f(9, 5)),
        y + f(2, 5),
        y,
        y - f(2, 5),
        (y + f(8, 5)) * (y - f(3, 5)) / (y + f(9, 5)),
        (y - f(3, 5)) * (y + f(3, 5)) * (y + 2) / ((y + f(9, 5)) * (y + f(7, 5))),
    ]


def _m5_plus(t: ScalarLike, length: int) -> list[Scalar]:
    tail = [_frac(5, 2), _frac(9, 5), _frac(7, 5), _frac(8, 7), _frac(27, 28), _frac(5, 6)]
    return [_sc(t)] + tail[: length - 1]


def _m5_minus(t: ScalarLike, length: int) -> list[Scalar]:
    head = [_frac(5, 6), _frac(27, 28), _frac(8, 7), _frac(7, 5), _frac(9, 5), _frac(5, 2)]
    return [-x for x in head[6 - (length - 1) :]] + [_sc(t)]


def _m6_plus(t: ScalarLike, length: int) -> list[Scalar]:
    return [_sc(t)] + [_frac(6, i) for i in range(2, length + 1)]


def _m6_minus(t: ScalarLike, length: int) -> list[Scalar]:
    return [-_frac(6, i) for i in range(length, 1, -1)] + [-_sc(t)]


# ---------------------------------------------------------------------------
# label-driven construction
# ---------------------------------------------------------------------------

def _uv_of(params: dict) -> tuple[Scalar, Scalar]:
    if "u" in params and "v" in params:
        return _sc(params["u"]), _sc(params["v"])
    lam, mu = _sc(params["lambda"]), _sc(params["mu"])
    return mu - lam * 3, mu - lam * 2


def uv_to_lambda_mu(u: Scalar, v: Scalar) -> tuple[Scalar, Scalar]:
    lam = v - u
    return lam, v + lam * 2


def family_b_vector(label: FamilyLabel, n_plus_1: int) -> list[Scalar]:
    """The tilde-normalized b-coordinates of the family instance."""
    if n_plus_1 < 2:
        raise BadParamsError("families need dimension at least 2")
    tag, p = label.tag, label.params
    if tag == "Vlm":
        u, v = _uv_of(p)
        return vlm_b(u, v, n_plus_1)
    if tag == "C":
        return c_b(p["x"], n_plus_1)
    if tag == "Vt23":
        return vt23_b(p["t"], n_plus_1)
    if tag == "Vt01":
        return vt01_b(p["t"], n_plus_1)
    if tag == "Vt13n":
        return vt13n_b(p["t"], n_plus_1)
    if tag == "Vt12n":
        return vt12n_b(p["t"], n_plus_1)
    if tag == "Vq":
        return vq_b(p["lambda"], p["k"], n_plus_1)
    if tag == "D1":
        return d1_b(p["k"], p["t"], n_plus_1)
    if tag == "D0":
        return d0_b(p["k"], p["t"], n_plus_1)
    if tag in ("TV01", "TV12"):
        return tv01_b(n_plus_1)
    if tag == "TV23":
        return tv23_b(n_plus_1)
    if tag in ("TV01d", "TV23d"):
        base = tv01_b(n_plus_1) if tag == "TV01d" else tv23_b(n_plus_1)
        return [-x for x in reversed(base)]
    if tag == "Rk":
        return rk_b(p["k"], n_plus_1)
    if tag == "RkDual":
        return rkdual_b(p["k"], n_plus_1)
    if tag in _COMPONENT_TABLE:
        dim, builder = _COMPONENT_TABLE[tag]
        if n_plus_1 != dim:
            raise BadParamsError(f"component {tag} lives in dimension {dim}")
        return builder(p)
    raise BadParamsError(f"unknown family tag {tag!r}")


_COMPONENT_TABLE: dict[str, tuple[int, Callable[[dict], list[Scalar]]]] = {
    "M1": (8, lambda p: _m1(p["u"], p["v"], 6)),
    "M1_0": (8, lambda p: _m1_0(p["v"], 6)),
    "M2": (8, lambda p: m2_b(p["x"], p["y"])),
    "M3": (8, lambda p: [_sc(p["t"])] * 6),
    "M4+": (8, lambda p: m4_b(+1, p["t"])),
    "M4-": (8, lambda p: m4_b(-1, p["t"])),
    "M5+": (8, lambda p: _m5_plus(p["t"], 6)),
    "M5-": (8, lambda p: _m5_minus(p["t"], 6)),
    "M6+": (8, lambda p: _m6_plus(p["t"], 6)),
    "M6-": (8, lambda p: _m6_minus(p["t"], 6)),
    "tM1": (9, lambda p: _m1(p["u"], p["v"], 7)),
    "tM1_0": (9, lambda p: _m1_0(p["v"], 7)),
    "tM2": (9, lambda p: tm2_b(p["y"])),
    "tM3": (9, lambda p: [_sc(p["t"])] * 7),
    "tM5+": (9, lambda p: _m5_plus(p["t"], 7)),
    "tM5-": (9, lambda p: _m5_minus(p["t"], 7)),
    "tM6+": (9, lambda p: _m6_plus(p["t"], 7)),
    "tM6-": (9, lambda p: _m6_minus(p["t"], 7)),
}


def zero_positions_of(label: FamilyLabel, n_plus_1: int) -> tuple[int, ...]:
    tag, p = label.tag, label.params
    n = n_plus_1 - 1
    if tag in ("TV01", "TV12", "TV23"):
        return (1,)
    if tag in ("TV01d", "TV23d"):
        return (n,)
    if tag in ("Vq", "D1", "D0"):
        return (p["k"],)
    if tag == "Rk":
        return (p["k"], p["k"] + 1)
    if tag == "RkDual":
        return (n - p["k"], n - p["k"] + 1)
    return ()


def make_family(label: FamilyLabel, n_plus_1: int) -> DefiningSet:
    """Exact tilde-normalized defining set of the family instance."""
    b = family_b_vector(label, n_plus_1)
    zeros = set(zero_positions_of(label, n_plus_1))
    alpha = [ZERO if i in zeros else ONE for i in range(1, n_plus_1)]
    return DefiningSet(n_plus_1, witt.TILDE, tuple(alpha), tuple(b))


# ---------------------------------------------------------------------------
# closed-form action tables of the deformed and rigid families
# ---------------------------------------------------------------------------


def _table_from_formula(
    n_plus_1: int, coeff: Callable[[int, int], Scalar]
) -> witt.ActionTable:
    rows = []
    for i in range(1, n_plus_1):
        rows.append(tuple(coeff(i, m) for m in range(1, n_plus_1 - i + 1)))
    return witt.ActionTable(n_plus_1, witt.STANDARD, tuple(rows))


def deformed_action(label: FamilyLabel, n_plus_1: int) -> witt.ActionTable:
    """Standard-basis action table from the family's displayed coefficient formula.

    Available for the families whose definition is a full closed-form action
    rather than a b-vector; used to cross-check the b-vector constructors.
    """
    tag, p = label.tag, label.params
    if tag in ("Vlm", "Vq"):
        if tag == "Vlm":
            u, v = _uv_of(p)
            lam, mu = uv_to_lambda_mu(u, v)
        else:
            lam = _sc(p["lambda"])
            mu = lam * 2 - p["k"]
        return _table_from_formula(
            n_plus_1, lambda i, m: _sc(m) + mu - lam * (i + 1)
        )
    if tag == "D1":
        k, t6 = p["k"], _sc(p["t"]) / 6
        def c(i: int, m: int) -> Scalar:
            if m == k + 1:
                return (t6 * (i - 1) - i + 2) * i
            return _sc(m + i - k - 1)
        return _table_from_formula(n_plus_1, c)
    if tag == "TV01":
        def c(i: int, m: int) -> Scalar:
            return _sc(i - 1) if m == 1 else _sc(m - 1)
        return _table_from_formula(n_plus_1, c)
    if tag == "TV12":
        def c(i: int, m: int) -> Scalar:
            return _sc(i * (i - 1)) if m == 1 else _sc(m + i - 1)
        return _table_from_formula(n_plus_1, c)
    if tag == "TV23":
        def c(i: int, m: int) -> Scalar:
            return _sc(i**3 - i) if m == 1 else _sc(m + 2 * i - 1)
        return _table_from_formula(n_plus_1, c)
    raise BadParamsError(f"no closed-form action for tag {label.tag!r}")


# ---------------------------------------------------------------------------
# label strings
# ---------------------------------------------------------------------------

_TV_NAMES = {
    "TV01": "TV(0,-1)",
    "TV12": "TV(-1,-2)",
    "TV23": "TV(-2,-3)",
    "TV01d": "TV(-1,-2-n)",
    "TV23d": "TV(1,-n)",
}
_VDEF_BASES = {
    "Vt23": ("-2", "-3"),
    "Vt01": ("0", "-1"),
    "Vt13n": ("1", "3-n"),
    "Vt12n": ("-1", "-2-n"),
}


def label_to_string(label: FamilyLabel) -> str:
    tag, p = label.tag, label.params
    if tag == "Vlm":
        u, v = _uv_of(p)
        lam, mu = uv_to_lambda_mu(u, v)
        return f"Vlm(lambda={format_scalar(lam)},mu={format_scalar(mu)})"
    if tag == "C":
        return f"C(x={format_scalar(p['x'])})"
    if tag in _VDEF_BASES:
        lam, mu = _VDEF_BASES[tag]
        return f"Vdef(base=Vlm({lam},{mu}),t={format_scalar(p['t'])})"
    if tag == "D1":
        return f"D1(k={p['k']},t={format_scalar(p['t'])})"
    if tag == "D0":
        return f"D0(k={p['k']},t={format_scalar(p['t'])})"
    if tag == "Vq":
        return f"Vq(lambda={format_scalar(p['lambda'])},k={p['k']})"
    if tag in _TV_NAMES:
        return _TV_NAMES[tag]
    if tag == "Rk":
        return f"Rk(k={p['k']})"
    if tag == "RkDual":
        return f"RkDual(k={p['k']})"
    if tag in _COMPONENT_TABLE:
        head = tag[:-1] if tag[-1] in "+-" else tag
        sign = [tag[-1]] if tag[-1] in "+-" else []
        base = "tM(" + head[2:] if head.startswith("tM") else "M(" + head[1:]
        args = ",".join(
            [*sign, *(f"{k}={format_scalar(v)}" for k, v in sorted(p.items()))]
        )
        return f"{base},{args})"
    raise BadParamsError(f"unknown family tag {tag!r}")


def _split_args(body: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    for ch in body:
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    if cur:
        parts.append(cur)
    return parts


def _parse_mu_token(tok: str, n: int | None) -> Scalar:
    tok = tok.strip()
    if tok.endswith("-n"):
        if n is None:
            raise BadParamsError("dimension-relative parameter needs a dimension")
        return parse_scalar(tok[:-2] if tok[:-2] else "0") - n
    return parse_scalar(tok)


def parse_label(text: str, n_plus_1: int | None = None) -> FamilyLabel:
    """Parse the canonical family-label grammar used by the CLI."""
    s = text.strip().replace(" ", "")
    n = n_plus_1 - 1 if n_plus_1 else None
    m = s.split("(", 1)
    if len(m) != 2 or not s.endswith(")"):
        raise BadParamsError(f"cannot parse family label {text!r}")
    head, body = m[0], m[1][:-1]
    args = _split_args(body)
    kw = {}
    pos = []
    for a in args:
        if "=" in a:
            k, v = a.split("=", 1)
            kw[k] = v
        else:
            pos.append(a)
    if head == "Vlm":
        if "u" in kw:
            return FamilyLabel("Vlm", {"u": parse_scalar(kw["u"]), "v": parse_scalar(kw["v"])})
        if "lambda" in kw:
            lam, mu = parse_scalar(kw["lambda"]), _parse_mu_token(kw["mu"], n)
        else:
            lam, mu = parse_scalar(pos[0]), _parse_mu_token(pos[1], n)
        return FamilyLabel("Vlm", {"lambda": lam, "mu": mu})
    if head == "C":
        return FamilyLabel("C", {"x": parse_scalar(kw.get("x") or pos[0])})
    if head == "Vdef":
        base = kw["base"]
        if not base.startswith("Vlm(") or not base.endswith(")"):
            raise BadParamsError(f"unknown deformation base in {text!r}")
        lam_s, mu_s = _split_args(base[4:-1])
        t = parse_scalar(kw["t"])
        lam = parse_scalar(lam_s.split("=")[-1])
        mu_tok = mu_s.split("=")[-1]
        if mu_tok.endswith("-n"):
            if lam == Scalar.of(1):
                return FamilyLabel("Vt13n", {"t": t})
            if lam == Scalar.of(-1):
                return FamilyLabel("Vt12n", {"t": t})
            raise BadParamsError(f"unknown deformation base in {text!r}")
        mu = parse_scalar(mu_tok)
        if (lam, mu) == (Scalar.of(-2), Scalar.of(-3)):
            return FamilyLabel("Vt23", {"t": t})
        if (lam, mu) == (Scalar.of(0), Scalar.of(-1)):
            return FamilyLabel("Vt01", {"t": t})
        if lam == Scalar.of(-1):
            return FamilyLabel("D1", {"k": int(-2 - mu.rational), "t": t})
        if lam == Scalar.of(0):
            return FamilyLabel("D0", {"k": int(-mu.rational), "t": t})
        raise BadParamsError(f"unknown deformation base in {text!r}")
    if head == "D1" or head == "D0":
        return FamilyLabel(head, {"k": int(kw["k"]), "t": parse_scalar(kw["t"])})
    if head == "Vq":
        return FamilyLabel("Vq", {"lambda": parse_scalar(kw["lambda"]), "k": int(kw["k"])})
    if head == "TV":
        for tag, name in _TV_NAMES.items():
            if name == f"TV({body})":
                return FamilyLabel(tag, {})
        raise BadParamsError(f"unknown rigid-module label {text!r}")
    if head == "Rk":
        return FamilyLabel("Rk", {"k": int(kw["k"])})
    if head == "RkDual":
        return FamilyLabel("RkDual", {"k": int(kw["k"])})
    if head in ("M", "tM"):
        comp = pos[0]
        sign = pos[1] if len(pos) > 1 else ""
        tag = f"{head}{comp}{sign}"
        params = {k: parse_scalar(v) for k, v in kw.items()}
        if tag in _COMPONENT_TABLE:
            return FamilyLabel(tag, params)
        raise BadParamsError(f"unknown component label {text!r}")
    raise BadParamsError(f"cannot parse family label {text!r}")
