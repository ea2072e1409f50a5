"""Command-line front end: ``python3 -m concordance <command> ...``.

Exit status is 0 on success, 1 when the mathematics refuses (unknown knot,
violated hypothesis, invalid matrix) and 2 for malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import catalog as cat
from .blanchfield import bl_pair, is_isotropic
from .laurent import CoeffRing, DomainError, ParseError, as_rat, format_poly, parse_poly
from .obstruction import (
    HypothesisViolation,
    SearchExhausted,
    cable_family,
    level_curves,
    level_curves_csv,
    level_curves_json,
    quadric,
    root_condition,
    strongly_coprime,
    verdict,
)
from .ratfun import format_ratfun
from .seifert import (
    CurveClass,
    InvalidSeifertMatrix,
    KnotEntry,
    SeifertMatrix,
    UnsupportedStructure,
    alexander_poly,
    element_order,
)


class UsageError(ValueError):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True)


# ---------------------------------------------------------------------------
# Argument resolution


def resolve_knot(text: str, entries: list[KnotEntry]) -> KnotEntry:
    """Catalog name, inline matrix JSON, or an inline catalog entry."""
    s = text.strip()
    if s[:1] in "[{":
        try:
            data = json.loads(s)
        except json.JSONDecodeError as exc:
            raise UsageError(f"knot argument is not valid JSON: {exc.msg}") from None
        if isinstance(data, list):
            return KnotEntry("<inline>", SeifertMatrix.of(data), {})
        return cat.entry_from_json({"curves": {}, "name": "<inline>", **data})
    return cat.find(entries, s)


def _split_top(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def resolve_curve(text: str, knot: KnotEntry) -> CurveClass:
    """A named curve (``eta``, ``2*eta``, ``-a``) or explicit coordinates ``[t + t^-1, 1]``."""
    s = text.strip()
    if s.startswith("["):
        try:
            return CurveClass.from_json(json.loads(s))
        except (json.JSONDecodeError, TypeError, KeyError):
            pass
        if not s.endswith("]"):
            raise ParseError(f"unterminated curve {text!r}")
        return CurveClass(parse_poly(p) for p in _split_top(s[1:-1]))
    return knot.curve(s)


# ---------------------------------------------------------------------------
# Commands


def cmd_alex(args, entries, out):
    k = resolve_knot(args.knot, entries)
    delta = alexander_poly(k.seifert)
    out.write(_dump({"knot": k.name, "alexander": delta.to_json(), "text": format_poly(delta)}) if args.json
              else format_poly(delta))


def cmd_bl(args, entries, out):
    k = resolve_knot(args.knot, entries)
    v = bl_pair(k.seifert, resolve_curve(args.x, k), resolve_curve(args.y, k), CoeffRing.parse(args.ring))
    out.write(_dump(v.to_json()) if args.json else format_ratfun(v.value))


def cmd_order(args, entries, out):
    k = resolve_knot(args.knot, entries)
    o = element_order(k.seifert, resolve_curve(args.x, k))
    out.write(_dump({"order": o.to_json(), "text": format_poly(o)}) if args.json else format_poly(o))


def cmd_isotropic(args, entries, out):
    k = resolve_knot(args.knot, entries)
    gens = [resolve_curve(g, k) for g in _split_top(args.gens)]
    res = is_isotropic(k.seifert, gens, CoeffRing.parse(args.ring))
    out.write(_dump({"isotropic": res}) if args.json else str(res).lower())


def cmd_verdict(args, entries, out):
    k = resolve_knot(args.knot, entries)
    R = resolve_knot(args.R, entries)
    prime = parse_poly(args.prime) if args.prime else None
    rep = verdict(
        k.seifert,
        resolve_curve(args.eta1, k),
        resolve_curve(args.eta2, k),
        R.seifert,
        parse_poly(args.L_alex),
        args.bound,
        prime,
    )
    out.write(_dump(rep.to_json()))


def cmd_coprime(args, entries, out):
    p, q = parse_poly(args.p), parse_poly(args.q)
    sc = strongly_coprime(p, q, args.bound)
    rc = root_condition(p, q, args.bound)
    if args.json:
        out.write(_dump({"strongly_coprime": sc.to_json(), "roots_only_pm": rc.to_json()}))
    else:
        lines = [sc.status]
        if sc.witness:
            lines.append("witness " + json.dumps(sc.witness.to_json(), sort_keys=True))
        lines.append("roots_only_pm " + {True: "true", False: "false", None: "undetermined"}[rc.holds])
        out.write("\n".join(lines))


def cmd_cables(args, entries, out):
    k = resolve_knot(args.knot, entries)
    fam = cable_family(k.seifert, resolve_curve(args.eta, k), args.i_max)
    if args.json:
        out.write(_dump([{"i": e.i, "curve": e.curve.to_json(), "selflink": e.selflink.to_json()} for e in fam]))
    else:
        out.write("\n".join(f"{e.i}\t{format_ratfun(e.selflink.value)}" for e in fam))


def cmd_quadric(args, entries, out):
    k = resolve_knot(args.knot, entries)
    anchor = resolve_curve(args.anchor, k) if args.anchor else None
    form = quadric(k.seifert, anchor, args.window)
    if args.json:
        out.write(_dump(form.to_json()))
    else:
        lines = ["lambda0 " + format_ratfun(form.lambda0)]
        lines += [" ".join(str(a) for a in row) for row in form.gram]
        if form.constant is not None:
            lines.append(f"constant {form.constant}")
        out.write("\n".join(lines))


def cmd_plotdata(args, entries, out):
    try:
        cs = [as_rat(c.strip()) for c in args.c.split(",") if c.strip()]
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"cannot read levels {args.c!r}") from None
    rows = level_curves(cs, args.denom_bound)
    text = level_curves_csv(rows) if args.format == "csv" else level_curves_json(rows)
    if args.out:
        Path(args.out).write_text(text)
        out.write(f"{len(rows)} rows -> {args.out}")
    else:
        out.write(text.rstrip("\n"))


def cmd_catalog(args, entries, out):
    if args.validate:
        found = cat.load_catalog(args.validate)
        out.write(f"ok: {len(found)} entries")
        return
    if args.export:
        cat.save_catalog(entries, args.export)
        out.write(f"{len(entries)} entries -> {args.export}")
        return
    if args.json:
        out.write(cat.dump_catalog(entries).rstrip("\n"))
        return
    out.write("\n".join(
        f"{e.name}\tgenus {e.seifert.genus}\t{format_poly(alexander_poly(e.seifert))}\tcurves: {', '.join(e.curves)}"
        for e in entries
    ))


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="concordance", description="Blanchfield-form concordance obstructions.")
    ap.add_argument("--catalog", help="catalog JSON file (default: built-in)")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=fn)
        return p

    p = add("alex", cmd_alex, "Alexander polynomial")
    p.add_argument("--knot", required=True)

    p = add("bl", cmd_bl, "Blanchfield pairing bl(x, y)")
    p.add_argument("--knot", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--ring", default="Q", help="Z, Q or Z[1/d] (used with --json)")

    p = add("order", cmd_order, "order of a module element")
    p.add_argument("--knot", required=True)
    p.add_argument("--x", required=True)

    p = add("isotropic", cmd_isotropic, "does bl vanish on the span of the generators")
    p.add_argument("--knot", required=True)
    p.add_argument("--gens", required=True, help="comma-separated curves")
    p.add_argument("--ring", default="Q")

    p = add("verdict", cmd_verdict, "distinctness obstruction for two infections")
    p.add_argument("--knot", required=True, help="doubling operator")
    p.add_argument("--eta1", required=True)
    p.add_argument("--eta2", required=True)
    p.add_argument("--R", required=True, help="ribbon knot of the first companion")
    p.add_argument("--L-alex", dest="L_alex", required=True, help="Alexander polynomial of the second companion")
    p.add_argument("--bound", type=int, default=12)
    p.add_argument("--prime", help="also run the localized order check at this polynomial")

    p = add("coprime", cmd_coprime, "strong coprimality of two polynomials")
    p.add_argument("--p", required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--bound", type=int, default=12)

    p = add("cables", cmd_cables, "self-linking of i * eta")
    p.add_argument("--knot", required=True)
    p.add_argument("--eta", required=True)
    p.add_argument("--i-max", dest="i_max", type=int, default=5)

    p = add("quadric", cmd_quadric, "trace quadric on the rational module")
    p.add_argument("--knot", required=True)
    p.add_argument("--anchor")
    p.add_argument("--window", type=int)

    p = add("plotdata", cmd_plotdata, "level curves xy = c for 9_46")
    p.add_argument("--c", default="1,-1,2,-2,3,-3,4,-4,5,-5", help="comma-separated levels in Z[1/2]")
    p.add_argument("--denom-bound", dest="denom_bound", type=int, default=4)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")

    p = add("catalog", cmd_catalog, "list, export or validate the catalog")
    p.add_argument("--export", metavar="PATH")
    p.add_argument("--validate", metavar="PATH")
    return ap


DOMAIN_ERRORS = (
    DomainError,
    KeyError,
    HypothesisViolation,
    SearchExhausted,
    InvalidSeifertMatrix,
    UnsupportedStructure,
    cat.CatalogError,
    FileNotFoundError,
)


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        entries = cat.load_catalog(args.catalog)
        args.func(args, entries, out)
    except (ParseError, UsageError) as exc:
        print(f"concordance: error: {exc}", file=sys.stderr)
        return 2
    except DOMAIN_ERRORS as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"concordance: {msg}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"concordance: {exc}", file=sys.stderr)
        return 1
    out.write("\n")
    return 0


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
