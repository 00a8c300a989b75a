"""Classification of graded threads into the named families.

``classify`` implements the three classification theorems (no zeros for
dimension >= 10, one zero for n >= 16, two adjacent zeros for dimension
>= 11).  Below those thresholds it still attempts a table match and labels
the result as below-threshold instead of asserting uniqueness; dimensions 8
and 9 with no zeros are matched against the variety components instead.

Parameter recovery never solves general polynomial systems: each family
designates gauge-free slots from which its parameters are read back, the
candidate is rebuilt in closed form, and a diagonal-rescaling witness is
required before anything is reported as classified.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import modulecore, relations, variety, witt
from .exactnum import ONE, ZERO, Scalar, solve_quadratic
from .families import (
    BadParamsError,
    FamilyLabel,
    family_b_vector,
    make_family,
)
from .modulecore import DefiningSet, ZeroPattern, zero_pattern


@dataclass(frozen=True)
class ClassificationResult:
    status: str  # classified | decomposable | not_a_module | below_threshold | degenerate
    label: Optional[FamilyLabel] = None
    witness: Optional[tuple[Scalar, ...]] = None
    parts: Optional[tuple[DefiningSet, DefiningSet]] = None
    split_index: Optional[int] = None
    memberships: tuple = ()
    first_bad_residual: Optional[tuple[str, int, Scalar]] = None
    note: Optional[str] = None


def detect_type(ds: DefiningSet) -> ZeroPattern:
    """Zero pattern of the degree-1 constants; 'degenerate' patterns force
    the top-corner action coefficient to vanish and sit outside the
    classification theorems."""
    nds, _ = modulecore.normalize(ds)
    return zero_pattern(nds)


# -- parameter recovery ------------------------------------------------------


def _recover_uv_candidates(b: Sequence[Scalar]) -> list[tuple[Scalar, Scalar]]:
    # the chart covers u = v and u = v + 1 points twice ((v, v) equals
    # (v+2, v+1)); prefer the u = v + 1 twin but keep both, since either
    # one can fall outside the chart domain at a finite dimension
    out = []
    for u, v in variety._recover_uv(b):
        twins = [(u, v)]
        if u == v:
            twins.insert(0, (v + 2, v + 1))
        elif u == v + 1:
            twins.append((u - 2, v - 1))
        for cand in twins:
            if cand not in out:
                out.append(cand)
    return out


def _vq_lambda_exclusions(k: int, n: int) -> tuple[Scalar, ...]:
    # values of lambda covered by other rows of the one-zero table
    if k == 2:
        return (Scalar.of(-1),)
    if k == n - 1:
        return (ZERO,)
    return (ZERO, Scalar.of(-1))


def _match(ds: DefiningSet, label: FamilyLabel) -> Optional[tuple[Scalar, ...]]:
    try:
        candidate = make_family(label, ds.n_plus_1)
    except BadParamsError:
        return None
    return modulecore.graded_isomorphic(ds, candidate)


def _classify_type_a(nds: DefiningSet) -> Optional[tuple[FamilyLabel, tuple[Scalar, ...]]]:
    b = list(nds.beta_or_b)
    n = nds.n_plus_1 - 1
    if all(x == b[0] for x in b):
        lab = FamilyLabel("C", {"x": b[0]})
        w = _match(nds, lab)
        if w:
            return lab, w
    for u, v in _recover_uv_candidates(b):
        lab = FamilyLabel("Vlm", {"u": u, "v": v})
        w = _match(nds, lab)
        if w:
            return lab, w
    for tag, t in (
        ("Vt23", b[0]),
        ("Vt01", b[0]),
        ("Vt13n", -b[n - 2]),
        ("Vt12n", -b[n - 2]),
    ):
        lab = FamilyLabel(tag, {"t": t})
        w = _match(nds, lab)
        if w:
            return lab, w
    return None


def _classify_type_b(nds: DefiningSet, k: int) -> Optional[tuple[FamilyLabel, tuple[Scalar, ...]]]:
    b = list(nds.beta_or_b)
    n = nds.n_plus_1 - 1
    candidates: list[FamilyLabel] = []
    # quotient family: lambda from a gauge-free slot next to the zero
    if k <= n - 2:
        lam = ONE - b[k] / 3  # b_{k+1} = 6(1 - lambda)/2
    else:
        lam = ONE - k - b[0] * Fraction((1 - k) * (2 - k), 6)
    if all(lam != ex for ex in _vq_lambda_exclusions(k, n)):
        candidates.append(FamilyLabel("Vq", {"lambda": lam, "k": k}))
    if 1 <= k <= n - 2:
        candidates.append(FamilyLabel("D1", {"k": k, "t": b[k]}))
    if 3 <= k <= n:
        candidates.append(FamilyLabel("D0", {"k": k, "t": b[k - 3]}))
    if k == 1:
        candidates.append(FamilyLabel("TV01", {}))
        candidates.append(FamilyLabel("TV23", {}))
    if k == n:
        candidates.append(FamilyLabel("TV01d", {}))
        candidates.append(FamilyLabel("TV23d", {}))
    for lab in candidates:
        w = _match(nds, lab)
        if w:
            return lab, w
    return None


def _classify_type_c(nds: DefiningSet, k: int) -> Optional[tuple[FamilyLabel, tuple[Scalar, ...]]]:
    n = nds.n_plus_1 - 1
    for lab in (FamilyLabel("Rk", {"k": k}), FamilyLabel("RkDual", {"k": n - k})):
        w = _match(nds, lab)
        if w:
            return lab, w
    return None


_THRESHOLD = {"A": 10, "B": 17, "C": 11}


def classify(ds: DefiningSet) -> ClassificationResult:
    """Classify a defining set, or explain why no family label applies."""
    nds, _ = modulecore.normalize(ds)
    pattern = zero_pattern(nds)
    table = modulecore.generate(nds)
    bad = witt.benoist_residuals(table)
    if bad:
        return ClassificationResult("not_a_module", first_bad_residual=bad[0])

    split = modulecore.decompose(nds)
    if split is not None:
        return ClassificationResult(
            "decomposable", parts=(split[0], split[1]), split_index=split[2]
        )
    if pattern.kind == "C":
        k, b = pattern.k, nds.beta_or_b
        prev = b[k - 2] if k >= 2 else ZERO
        nxt = b[k] if k <= len(b) - 1 else ZERO
        if prev.is_zero() and nxt.is_zero():
            return ClassificationResult(
                "decomposable",
                split_index=k + 1,
                note="the middle basis vector at the zero pair spans a trivial summand",
            )

    if pattern.is_degenerate:
        return ClassificationResult(
            "degenerate",
            note=(
                f"alpha zeros at {pattern.zeros} are neither single nor adjacent; "
                "the top corner coefficient vanishes and the module is unclassified"
            ),
        )

    dim = nds.n_plus_1
    if pattern.kind == "A" and dim in (8, 9):
        members = tuple(variety.component_membership(list(nds.beta_or_b)))
        if members:
            lab = members[0].label()
            return ClassificationResult(
                "classified",
                label=lab,
                witness=_match(nds, lab),
                memberships=members,
                note="matched against the variety components of this dimension",
            )
        return ClassificationResult(
            "degenerate", note="no variety component matches despite zero residuals"
        )

    if pattern.kind == "A":
        hit = _classify_type_a(nds) if dim >= 8 else None
    elif pattern.kind == "B":
        hit = _classify_type_b(nds, pattern.k) if dim >= 9 else None
    else:
        hit = _classify_type_c(nds, pattern.k) if dim >= 8 else None

    threshold = _THRESHOLD[pattern.kind]
    if hit is None:
        return ClassificationResult("below_threshold", note=f"dimension {dim} < {threshold}" if dim < threshold else "no table row matches")
    lab, w = hit
    note = None
    if dim < threshold:
        note = f"matched below the stated classification threshold {threshold}"
    return ClassificationResult("classified", label=lab, witness=w, note=note)


# ---------------------------------------------------------------------------
# uniqueness audit
# ---------------------------------------------------------------------------


def _rand_fraction(rng: random.Random, small: bool = False) -> Fraction:
    num = rng.randint(-24, 24)
    den = rng.randint(1, 8 if small else 12)
    return Fraction(num, den)


def _sample_params(tag: str, rng: random.Random) -> dict:
    if tag in ("M1", "tM1"):
        return {"u": Scalar.of(_rand_fraction(rng)), "v": Scalar.of(_rand_fraction(rng))}
    if tag in ("M1_0", "tM1_0"):
        return {"v": Scalar.of(_rand_fraction(rng))}
    if tag == "M2":
        return {"x": Scalar.of(_rand_fraction(rng)), "y": Scalar.of(_rand_fraction(rng))}
    if tag == "tM2":
        return {"y": Scalar.of(_rand_fraction(rng))}
    if tag in ("M4+", "M4-"):
        coin = rng.random() < 0.5
        t = Scalar.of(_rand_fraction(rng))
        if coin:
            t = t + Scalar.sqrt_of(19, _rand_fraction(rng))
        return {"t": t}
    return {"t": Scalar.of(_rand_fraction(rng))}


def _sample_component(tag: str, rng: random.Random, dim: int):
    for _ in range(100):
        try:
            params = _sample_params(tag, rng)
            return params, family_b_vector(FamilyLabel(tag, params), dim)
        except BadParamsError:
            continue
    raise RuntimeError(f"could not sample component {tag}")


DIM8_COMPONENTS = ("M1", "M1_0", "M2", "M3", "M4+", "M4-", "M5+", "M5-", "M6+", "M6-")
DIM9_COMPONENTS = ("tM1", "tM1_0", "tM2", "tM3", "tM5+", "tM5-", "tM6+", "tM6-")


@dataclass(frozen=True)
class AuditEntry:
    pair: tuple[str, str]
    relation: str  # "disjoint" | "intersects" | "criterion" | "closure"
    loci: tuple[str, ...] = ()
    note: str = ""


@dataclass
class AuditReport:
    dim: int
    kind: str
    entries: list[AuditEntry] = field(default_factory=list)
    samples_checked: int = 0
    eliminant_ok: Optional[bool] = None

    def entry(self, a: str, b: str) -> Optional[AuditEntry]:
        for e in self.entries:
            if e.pair in ((a, b), (b, a)):
                return e
        return None


def _observed_intersections(
    components: tuple[str, ...], dim: int, seed: int, samples: int
) -> tuple[dict[tuple[str, str], set[str]], int]:
    rng = random.Random(seed)
    hits: dict[tuple[str, str], set[str]] = {}
    checked = 0
    for tag in components:
        for _ in range(samples):
            params, b = _sample_component(tag, rng, dim)
            checked += 1
            for c in variety.component_membership(b):
                if c.name != tag:
                    key = tuple(sorted((tag, c.name)))
                    hits.setdefault(key, set()).add(
                        f"{tag}{_fmt_params(params)} = {c}"
                    )
    return hits, checked


def _fmt_params(params: dict) -> str:
    return "(" + ",".join(f"{k}={v}" for k, v in sorted(params.items())) + ")"


def _surd(coeff_a: Fraction, coeff_b: Fraction, d: int) -> Scalar:
    return Scalar.of(coeff_a) + Scalar.sqrt_of(d, coeff_b)


def audit_dim8(seed: int = 0, samples: int = 12) -> AuditReport:
    """Exact intersection table of the dimension-8 components.

    Every documented coincidence is recomputed from scratch: parameter loci
    are solved in the relevant quadratic field and confirmed by membership;
    random sampling sweeps for undocumented intersections.
    """
    report = AuditReport(8, "A")
    ent = report.entries

    # two-parameter family meets the branch component along an explicit curve
    _, crit_ok = variety.m1_meets_m2_criterion()
    ent.append(
        AuditEntry(
            ("M1", "M2"),
            "criterion",
            ("u = (v+3)(v+4)(v+5)/30 + (v-3)/2",),
            f"symbolic check {'passed' if crit_ok else 'FAILED'}",
        )
    )

    # M1_0 meets M2 where (v+3)(v+4) = 15
    loci = solve_quadratic(ONE, Scalar.of(7), Scalar.of(-3)) or []
    confirmed = []
    for v in loci:
        pt = family_b_vector(FamilyLabel("M1_0", {"v": v}), 8)
        names = {c.name for c in variety.component_membership(pt)}
        if "M2" in names:
            confirmed.append(str(v))
    ent.append(AuditEntry(("M1_0", "M2"), "intersects", tuple(confirmed)))

    # M4 meets M1 at a single surd parameter on each branch
    for sign, name in ((+1, "M4+"), (-1, "M4-")):
        t = _surd(Fraction(-16, 15), Fraction(sign * 68, 285), 19)
        pt = family_b_vector(FamilyLabel(name, {"t": t}), 8)
        m1 = [c for c in variety.component_membership(pt) if c.name == "M1"]
        locus = [f"t={t}"] + [f"u={c.params['u']},v={c.params['v']}" for c in m1]
        ent.append(
            AuditEntry(
                (name, "M1"),
                "intersects" if m1 else "disjoint",
                tuple(locus),
                "point parameters verified in the final chart convention",
            )
        )

    # M5 meets M1 at t = +-4
    for name, t, uv in (("M5+", 4, (3, 1)), ("M5-", -4, (-10, -9))):
        pt = family_b_vector(FamilyLabel(name, {"t": Scalar.of(t)}), 8)
        m1 = [c for c in variety.component_membership(pt) if c.name == "M1"]
        ok = any(c.params == {"u": Scalar.of(uv[0]), "v": Scalar.of(uv[1])} for c in m1)
        ent.append(
            AuditEntry(
                (name, "M1"),
                "intersects" if ok else "disjoint",
                (f"t={t}", f"u={uv[0]},v={uv[1]}"),
            )
        )

    # M5 lies in the closure of M2 (the strict chart excludes its y-values)
    closure_ok = all(
        _m2_cleared_relations_hold(family_b_vector(FamilyLabel(nm, {"t": Scalar.of(t)}), 8))
        for nm in ("M5+", "M5-")
        for t in (0, 1, -3)
    )
    strict_empty = not any(
        c.name == "M2"
        for nm in ("M5+", "M5-")
        for t in (0, 1, -3)
        for c in variety.component_membership(family_b_vector(FamilyLabel(nm, {"t": Scalar.of(t)}), 8))
    )
    ent.append(
        AuditEntry(
            ("M5+", "M2"),
            "closure",
            ("all t",),
            "cleared branch relations hold for every t; the strict chart "
            "excludes y = 9/5 and y = -7/5, so no chart point coincides"
            if closure_ok and strict_empty
            else "FAILED",
        )
    )

    # M6 meets M1_0 with parameter 6 on both branches
    for name, v0 in (("M6+", 0), ("M6-", -7)):
        pt = family_b_vector(FamilyLabel(name, {"t": Scalar.of(6)}), 8)
        hit = [c for c in variety.component_membership(pt) if c.name == "M1_0"]
        ok = any(c.params == {"v": Scalar.of(v0)} for c in hit)
        ent.append(
            AuditEntry(
                (name, "M1_0"),
                "intersects" if ok else "disjoint",
                (f"t=6", f"v={v0}"),
            )
        )

    observed, checked = _observed_intersections(DIM8_COMPONENTS, 8, seed, samples)
    report.samples_checked = checked
    documented = {e.pair for e in ent if e.relation in ("intersects", "criterion")}
    for pair, witnesses in sorted(observed.items()):
        if pair not in documented and tuple(reversed(pair)) not in documented:
            ent.append(AuditEntry(pair, "intersects", tuple(sorted(witnesses)), "UNDOCUMENTED"))
    for tag in DIM8_COMPONENTS:
        if tag == "M3":
            continue
        pair = tuple(sorted(("M3", tag)))
        if pair not in observed:
            ent.append(AuditEntry(("M3", tag), "disjoint"))
    report.eliminant_ok = variety.eliminant_identity()[1]
    return report


def _m2_cleared_relations_hold(b: list[Scalar]) -> bool:
    """Denominator-cleared relations of the branch chart at a point."""
    b1, x, y, z, b5, b6 = b
    f = Fraction
    e1 = (y * 5 - 9) * b1 - (x * y * 5 - x * 17 + y * 10 + 2)
    e2 = (x * 2 - y + 1) * b5 * 5 - (x * y * 5 + x * 3 - 6)
    e3 = (x * 2 - y + 1) * (y * 5 + 7) * b6 - (
        x * y * y * 5 - x * y * 2 - y * 22 + y * y * 10 + x * 21 - 12
    )
    return z == y - f(2, 5) and e1.is_zero() and e2.is_zero() and e3.is_zero()


def audit_dim9(seed: int = 0, samples: int = 12) -> AuditReport:
    """Exact intersection table of the dimension-9 components."""
    report = AuditReport(9, "A")
    ent = report.entries

    loci, complete = variety.tm2_meets_tm1_locus()
    ent.append(
        AuditEntry(
            ("tM2", "tM1"),
            "intersects",
            tuple(str(y) for y in loci),
            "locus solved by elimination"
            + ("" if complete else " (univariate factor left unresolved)"),
        )
    )

    # the dimension-8 coincidences persist one dimension up
    for name, t, uv in (("tM5+", 4, (3, 1)), ("tM5-", -4, (-11, -10))):
        pt = family_b_vector(FamilyLabel(name, {"t": Scalar.of(t)}), 9)
        hit = [c for c in variety.component_membership(pt) if c.name == "tM1"]
        ok = any(c.params == {"u": Scalar.of(uv[0]), "v": Scalar.of(uv[1])} for c in hit)
        ent.append(
            AuditEntry(
                (name, "tM1"),
                "intersects" if ok else "disjoint",
                (f"t={t}", f"u={uv[0]},v={uv[1]}"),
            )
        )
    for name, v0 in (("tM6+", 0), ("tM6-", -8)):
        pt = family_b_vector(FamilyLabel(name, {"t": Scalar.of(6)}), 9)
        hit = [c for c in variety.component_membership(pt) if c.name == "tM1_0"]
        ok = any(c.params == {"v": Scalar.of(v0)} for c in hit)
        ent.append(
            AuditEntry(
                (name, "tM1_0"),
                "intersects" if ok else "disjoint",
                ("t=6", f"v={v0}"),
            )
        )

    # the surd branch components do not reach dimension 9
    rng = random.Random(seed)
    gone = True
    for name in ("M4+", "M4-"):
        for _ in range(samples):
            params, _b = _sample_component(name, rng, 8)
            ds = make_family(FamilyLabel(name, params), 8)
            if relations.extend_right(ds):
                gone = False
    ent.append(
        AuditEntry(
            ("M4+", "M4-"),
            "disjoint",
            (),
            "no dimension-8 surd-branch point extends one step up"
            if gone
            else "FAILED: an extension exists",
        )
    )

    observed, checked = _observed_intersections(DIM9_COMPONENTS, 9, seed, samples)
    report.samples_checked = checked
    documented = {
        ("tM1", "tM2"),
        ("tM1", "tM5+"),
        ("tM1", "tM5-"),
        ("tM1_0", "tM6+"),
        ("tM1_0", "tM6-"),
    }
    for pair, witnesses in sorted(observed.items()):
        if pair not in documented:
            ent.append(AuditEntry(pair, "intersects", tuple(sorted(witnesses)), "UNDOCUMENTED"))
    for tag in DIM9_COMPONENTS:
        if tag == "tM3":
            continue
        pair = tuple(sorted(("tM3", tag)))
        if pair not in observed:
            ent.append(AuditEntry(("tM3", tag), "disjoint"))
    return report


def _sample_family_labels(kind: str, n_plus_1: int, rng: random.Random) -> list[FamilyLabel]:
    """Random labels inside each family's stated open domain.

    The domain restrictions (t away from the degeneration values, lambda
    away from the deformation rows, boundary zero pairs excluded) are part
    of the family lists, so landing on them is a documented coincidence
    rather than a uniqueness clash.
    """
    n = n_plus_1 - 1

    def frac(*avoid: Fraction) -> Scalar:
        while True:
            q = _rand_fraction(rng)
            if all(q != a for a in avoid):
                return Scalar.of(q)

    labels: list[FamilyLabel] = []
    if kind == "A":
        labels.append(FamilyLabel("Vlm", {"u": frac(), "v": frac()}))
        labels.append(FamilyLabel("C", {"x": frac()}))
        for tag in ("Vt23", "Vt13n"):
            labels.append(FamilyLabel(tag, {"t": frac(Fraction(4))}))
        for tag in ("Vt01", "Vt12n"):
            labels.append(FamilyLabel(tag, {"t": frac(Fraction(6))}))
    elif kind == "B":
        lam = frac(Fraction(0), Fraction(-1))
        labels.append(FamilyLabel("Vq", {"lambda": lam, "k": rng.randint(1, n)}))
        labels.append(FamilyLabel("D1", {"k": rng.randint(1, n - 2), "t": frac()}))
        labels.append(FamilyLabel("D0", {"k": rng.randint(3, n), "t": frac()}))
        for tag in ("TV01", "TV23", "TV01d", "TV23d"):
            labels.append(FamilyLabel(tag, {}))
    else:
        labels.append(FamilyLabel("Rk", {"k": rng.randint(2, n - 1)}))
        labels.append(FamilyLabel("RkDual", {"k": rng.randint(2, n - 1)}))
    return labels


def audit_families(kind: str, n_plus_1: int, seed: int = 0, rounds: int = 10) -> AuditReport:
    """Sampled pairwise-distinctness audit for one-zero and adjacent-zero families.

    Draws random instances of every family and confirms that the classifier
    reports each instance under its own canonical label (documented
    coincidences, such as deformation parameters hitting the undeformed
    value, are recognized by their canonical labels instead).
    """
    report = AuditReport(n_plus_1, kind)
    rng = random.Random(seed)
    clashes: dict[tuple[str, str], set[str]] = {}
    checked = 0
    for _ in range(rounds):
        for lab in _sample_family_labels(kind, n_plus_1, rng):
            try:
                ds = make_family(lab, n_plus_1)
            except BadParamsError:
                continue
            res = classify(ds)
            checked += 1
            if res.status != "classified":
                clashes.setdefault((lab.tag, res.status), set()).add(str(lab))
                continue
            if res.label.tag != lab.tag:
                key = tuple(sorted((lab.tag, res.label.tag)))
                clashes.setdefault(key, set()).add(f"{lab} -> {res.label}")
    report.samples_checked = checked
    for pair, witnesses in sorted(clashes.items()):
        report.entries.append(AuditEntry(pair, "intersects", tuple(sorted(witnesses))))
    return report


def uniqueness_audit(n_plus_1: int, kind: str, seed: int = 0) -> AuditReport:
    """Pairwise intersection/disjointness audit for one dimension and type."""
    if kind == "A" and n_plus_1 == 8:
        return audit_dim8(seed)
    if kind == "A" and n_plus_1 == 9:
        return audit_dim9(seed)
    return audit_families(kind, n_plus_1, seed)
