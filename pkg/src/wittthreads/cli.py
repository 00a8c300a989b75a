"""Command-line front end with JSON module documents.

A thread module travels as one JSON object per file:

    {
      "schema_version": 1,
      "n_plus_1": 12,
      "convention": "tilde",          # or "standard"
      "field_d": 0,                   # discriminant, 0 for rational constants
      "alpha": ["1", "1", ...],       # n scalar strings
      "b_or_beta": ["6", "3", ...],   # n-1 scalar strings
      "label": "Vdef(base=Vlm(0,-1),t=6)"   # optional
    }

Scalars use the exact text format of :mod:`wittthreads.exactnum`.  All
subcommands print deterministic JSON on stdout; ``verify`` exits 0 exactly
when every relation residual vanishes.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from . import classify as classify_mod
from . import families, modulecore, relations, variety, witt
from .exactnum import Scalar, ScalarParseError, format_scalar, parse_scalar
from .families import BadParamsError
from .modulecore import DefiningSet

SCHEMA_VERSION = 1


class ParseError(ValueError):
    """A module document failed validation; the message names the field."""


# -- document <-> defining set ----------------------------------------------


def document_of(ds: DefiningSet, label: str | None = None) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "n_plus_1": ds.n_plus_1,
        "convention": ds.convention,
        "field_d": ds.field_d,
        "alpha": [format_scalar(a) for a in ds.alpha],
        "b_or_beta": [format_scalar(b) for b in ds.beta_or_b],
    }
    if label is not None:
        doc["label"] = label
    return doc


def defining_set_of(doc: Any) -> DefiningSet:
    if not isinstance(doc, dict):
        raise ParseError("module document must be a JSON object")
    for key in ("n_plus_1", "convention", "alpha", "b_or_beta"):
        if key not in doc:
            raise ParseError(f"missing field {key!r}")
    n_plus_1 = doc["n_plus_1"]
    if not isinstance(n_plus_1, int) or n_plus_1 < 1:
        raise ParseError("field 'n_plus_1' must be a positive integer")
    convention = doc["convention"]
    if convention not in (witt.TILDE, witt.STANDARD):
        raise ParseError("field 'convention' must be 'tilde' or 'standard'")

    def scalars(key: str, expected: int) -> tuple[Scalar, ...]:
        raw = doc[key]
        if not isinstance(raw, list) or len(raw) != expected:
            raise ParseError(f"field {key!r} must be a list of {expected} scalar strings")
        out = []
        for i, s in enumerate(raw):
            try:
                out.append(parse_scalar(str(s)))
            except ScalarParseError as e:
                raise ParseError(f"field {key!r}[{i}]: {e}") from e
        return tuple(out)

    alpha = scalars("alpha", max(n_plus_1 - 1, 0))
    beta = scalars("b_or_beta", max(n_plus_1 - 2, 0))
    try:
        return DefiningSet(n_plus_1, convention, alpha, beta)
    except ValueError as e:
        raise ParseError(str(e)) from e


def _load(path: str) -> DefiningSet:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise ParseError(f"{path}: {e}") from e
    return defining_set_of(doc)


# -- report assembly ---------------------------------------------------------


def _residual_list(entries) -> list[dict]:
    return [
        {"system": sid, "index": idx, "residual": format_scalar(r)}
        for sid, idx, r in entries
    ]


def verify_report(ds: DefiningSet) -> dict:
    nds, _ = modulecore.normalize(ds)
    pattern = modulecore.zero_pattern(nds)
    table = modulecore.generate(nds)
    benoist = witt.benoist_residuals(table)
    jacobi = witt.full_jacobi_check(table)
    specialized = relations.residual_report(ds)
    split = modulecore.decompose(nds)
    forced = sorted(relations.forced_zero_set(nds.alpha))
    ok = not benoist and not jacobi and specialized.all_zero
    return {
        "command": "verify",
        "pattern": {"kind": pattern.kind, "k": pattern.k, "zeros": list(pattern.zeros)},
        "relation_residuals": {
            "all_zero": not benoist,
            "nonzero": _residual_list(benoist),
        },
        "bracket_defects": {
            "empty": not jacobi,
            "nonzero": [
                {"i": i, "j": j, "index": m, "defect": format_scalar(d)}
                for i, j, m, d in jacobi
            ],
        },
        "specialized_residuals": {
            "all_zero": specialized.all_zero,
            "nonzero": _residual_list(specialized.nonzero()),
        },
        "forced_zeros": [list(p) for p in forced],
        "decomposable": {"split_index": split[2] if split else None},
        "status": "module" if ok else "not_module",
    }


def _params_json(params: dict) -> dict:
    return {
        k: (v if isinstance(v, int) else format_scalar(v)) for k, v in sorted(params.items())
    }


def classify_report(ds: DefiningSet) -> dict:
    res = classify_mod.classify(ds)
    out: dict[str, Any] = {"command": "classify", "status": res.status}
    if res.label is not None:
        out["family"] = res.label.tag
        out["label"] = str(res.label)
        out["params"] = _params_json(res.label.params)
    if res.witness is not None:
        out["witness"] = [format_scalar(w) for w in res.witness]
    if res.memberships:
        out["memberships"] = [str(m) for m in res.memberships]
    if res.split_index is not None:
        out["split_index"] = res.split_index
    if res.first_bad_residual is not None:
        sid, idx, r = res.first_bad_residual
        out["first_nonzero_residual"] = {
            "system": sid,
            "index": idx,
            "residual": format_scalar(r),
        }
    if res.note:
        out["note"] = res.note
    return out


def extend_report(ds: DefiningSet, direction: str) -> dict:
    exts = relations.extend_right(ds) if direction == "right" else relations.extend_left(ds)
    return {
        "command": "extend",
        "direction": direction,
        "extendable": bool(exts),
        "extensions": [
            {"free": e.free, "value": None if e.free else format_scalar(e.value)}
            for e in exts
        ],
    }


def audit_report(dim: int, kind: str, seed: int) -> dict:
    rep = classify_mod.uniqueness_audit(dim, kind, seed=seed)
    out = {
        "command": "audit",
        "dim": rep.dim,
        "kind": rep.kind,
        "samples_checked": rep.samples_checked,
        "entries": [
            {
                "pair": list(e.pair),
                "relation": e.relation,
                "loci": list(e.loci),
                "note": e.note,
            }
            for e in rep.entries
        ],
    }
    if rep.eliminant_ok is not None:
        out["eliminant_ok"] = rep.eliminant_ok
    return out


def eliminant_report() -> dict:
    poly, ok, const = variety.eliminant_identity()
    return {
        "command": "eliminant",
        "ok": ok,
        "constant": str(const),
        "total_degree": poly.total_degree(),
        "factorization": "(z - y + 2/5) * F(x, y, z)" if ok else "unexpected",
        "eliminant": str(poly),
    }


# -- entry point --------------------------------------------------------------


def _emit(args, payload: dict) -> None:
    if args.json:
        print(json.dumps(payload, separators=(",", ":")))
    else:
        print(json.dumps(payload, indent=2))


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="wittthreads",
        description="construct, verify and classify graded thread modules",
    )
    parser.add_argument("--seed", type=int, default=0, help="seed for sampled audits")
    parser.add_argument("--json", action="store_true", help="compact single-line JSON")
    parser.add_argument("--quiet", action="store_true", help="suppress diagnostics on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check all relation residuals of a module document")
    p.add_argument("file")
    p = sub.add_parser("classify", help="classify a module document")
    p.add_argument("file")
    p = sub.add_parser("family", help="construct a family instance")
    p.add_argument("label")
    p.add_argument("--dim", type=int, required=True, help="dimension n+1")
    p = sub.add_parser("dual", help="dualize a module document")
    p.add_argument("file")
    p = sub.add_parser("extend", help="solve a one-step extension")
    p.add_argument("file")
    p.add_argument("--dir", choices=("right", "left"), default="right")
    p = sub.add_parser("audit", help="pairwise family/component intersection audit")
    p.add_argument("dim", type=int)
    p.add_argument("kind", choices=("typeA", "typeB", "typeC"))
    sub.add_parser("eliminant", help="verify the symbolic eliminant factorization")

    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            report = verify_report(_load(args.file))
            _emit(args, report)
            return 0 if report["status"] == "module" else 1
        if args.command == "classify":
            report = classify_report(_load(args.file))
            _emit(args, report)
            return 1 if report["status"] == "not_a_module" else 0
        if args.command == "family":
            label = families.parse_label(args.label, args.dim)
            ds = families.make_family(label, args.dim)
            _emit(args, document_of(ds, label=str(label)))
            return 0
        if args.command == "dual":
            ds = modulecore.dualize(_load(args.file))
            _emit(args, document_of(ds))
            return 0
        if args.command == "extend":
            _emit(args, extend_report(_load(args.file), args.dir))
            return 0
        if args.command == "audit":
            _emit(args, audit_report(args.dim, args.kind[-1].upper(), args.seed))
            return 0
        if args.command == "eliminant":
            report = eliminant_report()
            _emit(args, report)
            return 0 if report["ok"] else 1
    except (ParseError, BadParamsError) as e:
        if not args.quiet:
            print(f"error: {e}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
