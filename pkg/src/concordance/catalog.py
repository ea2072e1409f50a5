"""Knot catalog: JSON list of Seifert matrices with named curves."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Iterable

import jsonschema

from .laurent import format_poly, parse_poly
from .seifert import CurveClass, InvalidSeifertMatrix, KnotEntry, SeifertMatrix, alexander_poly, connected_sum


class CatalogError(ValueError):
    pass


_POLY = {
    "type": "array",
    "items": {
        "type": "array",
        "prefixItems": [{"type": "integer"}, {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}],
        "minItems": 2,
        "maxItems": 2,
    },
}

SCHEMA = {
    "type": "array",
    "items": {
        "type": "object",
        "required": ["name", "seifert", "curves"],
        "additionalProperties": False,
        "properties": {
            "name": {"type": "string", "minLength": 1},
            "seifert": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
            "curves": {"type": "object", "additionalProperties": {"type": "array", "items": _POLY}},
            "notes": {"type": "string"},
        },
    },
}


def entry_from_json(data: dict) -> KnotEntry:
    V = SeifertMatrix.of(data["seifert"])
    curves = {k: CurveClass.from_json(v) for k, v in data["curves"].items()}
    return KnotEntry(data["name"], V, curves, data.get("notes", ""))


def parse_catalog(text: str, source: str = "<catalog>") -> list[KnotEntry]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CatalogError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    errors = sorted(jsonschema.Draft202012Validator(SCHEMA).iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        where = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise CatalogError(f"{source}: field {where}: {e.message}")
    out = []
    seen = set()
    for i, item in enumerate(data):
        name = item["name"]
        if name in seen:
            raise CatalogError(f"{source}: field {i}/name: duplicate entry {name!r}")
        seen.add(name)
        try:
            out.append(entry_from_json(item))
        except (InvalidSeifertMatrix, ValueError) as exc:
            raise CatalogError(f"{source}: entry {i} ({name!r}): {exc}") from None
    return out


def load_catalog(path: str | Path | None = None) -> list[KnotEntry]:
    """Read a catalog file; ``None`` loads the catalog shipped with the package."""
    if path is None:
        text = resources.files("concordance").joinpath("data/catalog.json").read_text()
        return parse_catalog(text, "built-in catalog")
    path = Path(path)
    return parse_catalog(path.read_text(), str(path))


def dump_catalog(entries: Iterable[KnotEntry]) -> str:
    return json.dumps([e.to_json() for e in entries], indent=1) + "\n"


def save_catalog(entries: Iterable[KnotEntry], path: str | Path) -> None:
    Path(path).write_text(dump_catalog(entries))


def find(entries: Iterable[KnotEntry], name: str) -> KnotEntry:
    for e in entries:
        if e.name == name:
            return e
    raise KeyError(f"unknown knot {name!r}")


# ---------------------------------------------------------------------------
# How the shipped entries are built


def twist_matrix(k: int) -> SeifertMatrix:
    """Genus-one matrix with Alexander polynomial ``k(k+1)t^2 - (2k^2+2k+1)t + k(k+1)``."""
    return SeifertMatrix.of([[k, 1], [0, -(k + 1)]])


_R_NOTE = (
    "Genus-one matrix [[{k},1],[0,-{k1}]], chosen as the simplest integral matrix whose "
    "Alexander polynomial is {delta} and whose V-V^T is the standard symplectic form. "
    "The ribbon knots in the construction only fix the polynomial, not the matrix; this is a "
    "representative with that module. Checked by alexander_poly. alpha = ({k},{k1}) is killed by "
    "{ka} and beta = (1,-1) by {kb}; both are isotropic."
)

_EX2_NOTE = (
    "Connected sum R_1 # R_2 (block diagonal). eta1 sits in the R_2 summand as r(t) e_4 with "
    "r = (9 - t)/5, a rational class chosen so that bl(eta1, eta1) = 5(t-1)^2/(6-13t+6t^2) exactly. "
    "No integral class realizes that value on this matrix: e_4 has self-linking 2(t-1)^2/Delta, "
    "r e_4 gives 2 r(3/2) r(2/3) times that, and since 3/2 = 2/3 mod 5 the factor 5 forces 25. "
    "eta2 = eta1 + (e_1 - e_2), where e_1 - e_2 is killed by t - 2 and is isotropic, so eta2 has "
    "order (2-3t)(3-2t)(2-t) and the same self-linking. eta1_int = e_4 and eta2_int = e_1 - e_2 + e_4 "
    "are integral curves with the same orders and equal self-linking 2(t-1)^2/(6-13t+6t^2)."
)


def build_default_catalog() -> list[KnotEntry]:
    c = CurveClass
    entries = [
        KnotEntry(
            "9_46",
            SeifertMatrix.of([[0, -1], [-2, 0]]),
            {
                "a": c([1, 0]),
                "b": c([0, 1]),
                "eta": c([1, 1]),
                "gamma1": c(["t + t^-1", 1]),
                "gamma2": c(["t", "t^2 + 1"]),
            },
            "Genus-one Seifert matrix of 9_46. a and b generate the two isotropic "
            "summands, killed by 2t-1 and t-2; eta = a + b generates the module.",
        )
    ]
    for k in range(1, 5):
        entries.append(
            KnotEntry(
                f"R_{k}",
                twist_matrix(k),
                {"e1": c([1, 0]), "e2": c([0, 1]), "alpha": c([k, k + 1]), "beta": c([1, -1])},
                _R_NOTE.format(
                    k=k,
                    k1=k + 1,
                    delta=format_poly(alexander_poly(twist_matrix(k))),
                    ka=format_poly(parse_poly(f"{k + 1}t - {k}")),
                    kb=format_poly(parse_poly(f"{k}t - {k + 1}")),
                ),
            )
        )
    r = parse_poly("9/5 - (1/5)t")
    entries.append(
        KnotEntry(
            "ex2_R1R2",
            connected_sum(twist_matrix(1), twist_matrix(2)),
            {
                "eta1": c([0, 0, 0, r]),
                "eta2": c([1, -1, 0, r]),
                "eta1_int": c([0, 0, 0, 1]),
                "eta2_int": c([1, -1, 0, 1]),
                "alpha_R1": c([1, 2, 0, 0]),
                "beta_R1": c([1, -1, 0, 0]),
            },
            _EX2_NOTE,
        )
    )
    return entries
