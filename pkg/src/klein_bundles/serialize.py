"""JSON documents for line bundles, bundle descriptors and moduli reports.

Exact rationals travel as "p/q" strings (integers as "n"), floats as JSON
numbers.  Every ``*_to_json`` has a matching ``*_from_json`` that
validates against the schema first.
"""

from __future__ import annotations

from fractions import Fraction

import jsonschema

from .bundles import (
    BundleDesc,
    ConjPair,
    Ext2,
    Flavor,
    Line,
    RealLine,
    RealStable,
    SelfExt,
    StableAtom,
    self_extension,
)
from .errors import UsageError
from .moduli import ModuliDesc, ModuliKind
from .picard import LineBundleClass
from .torus import TorusPoint, as_coord, is_exact

_COORD = {
    "oneOf": [
        {"type": "string", "pattern": r"^-?\d+(/\d+)?$"},
        {"type": "number"},
    ]
}

_LINE = {
    "type": "object",
    "required": ["degree", "a", "b"],
    "properties": {"degree": {"type": "integer"}, "a": _COORD, "b": _COORD},
    "additionalProperties": False,
}

_COMPLEX_ATOM = {
    "oneOf": [
        {
            "type": "object",
            "required": ["kind", "line"],
            "properties": {"kind": {"const": "line"}, "line": _LINE},
            "additionalProperties": False,
        },
        {
            "type": "object",
            "required": ["kind", "xi"],
            "properties": {"kind": {"const": "ext"}, "rank": {"type": "integer", "minimum": 2}, "xi": _LINE},
            "additionalProperties": False,
        },
        {
            "type": "object",
            "required": ["kind", "rank", "degree", "a", "b"],
            "properties": {
                "kind": {"const": "stable"},
                "rank": {"type": "integer", "minimum": 1},
                "degree": {"type": "integer"},
                "a": _COORD,
                "b": _COORD,
            },
            "additionalProperties": False,
        },
    ]
}

_REAL_ATOM = {
    "oneOf": [
        {
            "type": "object",
            "required": ["kind", "line"],
            "properties": {"kind": {"const": "real_line"}, "line": _LINE},
            "additionalProperties": False,
        },
        {
            "type": "object",
            "required": ["kind", "xi"],
            "properties": {"kind": {"const": "self_ext"}, "xi": _LINE},
            "additionalProperties": False,
        },
        {
            "type": "object",
            "required": ["kind", "rank", "degree", "key"],
            "properties": {
                "kind": {"const": "real_stable"},
                "rank": {"type": "integer", "minimum": 1},
                "degree": {"type": "integer"},
                "key": _COORD,
            },
            "additionalProperties": False,
        },
        {
            "type": "object",
            "required": ["kind", "atom"],
            "properties": {"kind": {"const": "conj_pair"}, "atom": _COMPLEX_ATOM},
            "additionalProperties": False,
        },
    ]
}

SCHEMAS = {
    "LineBundleClass": _LINE,
    "BundleDesc": {
        "type": "object",
        "required": ["flavor", "atoms"],
        "properties": {
            "flavor": {"enum": ["real", "complex"]},
            "atoms": {"type": "array", "minItems": 1},
            "rank": {"type": "integer"},
            "degree": {"type": "integer"},
        },
        "additionalProperties": False,
        "allOf": [
            {
                "if": {"properties": {"flavor": {"const": "real"}}},
                "then": {"properties": {"atoms": {"items": _REAL_ATOM}}},
                "else": {"properties": {"atoms": {"items": _COMPLEX_ATOM}}},
            }
        ],
    },
    "ModuliDesc": {
        "type": "object",
        "required": ["r", "d", "kind", "dimension", "parametrization", "real_locus"],
        "properties": {
            "r": {"type": "integer", "minimum": 1},
            "d": {"type": "integer"},
            "kind": {"enum": [k.value for k in ModuliKind]},
            "dimension": {"type": "integer", "minimum": 0, "maximum": 2},
            "circumference": {"type": "string"},
            "parametrization": {"type": "object"},
            "real_locus": {"type": ["object", "null"]},
        },
        "additionalProperties": False,
    },
    "Error": {
        "type": "object",
        "required": ["error", "kind", "message"],
        "properties": {
            "error": {"const": True},
            "kind": {"type": "string"},
            "message": {"type": "string"},
            "exit_code": {"type": "integer"},
        },
    },
}


def validate(doc, schema: str):
    try:
        jsonschema.validate(doc, SCHEMAS[schema])
    except jsonschema.ValidationError as exc:
        raise UsageError(f"invalid {schema} document: {exc.message}") from None
    return doc


def coord_to_json(x):
    if is_exact(x):
        return str(Fraction(x))
    return float(x)


def coord_from_json(x):
    return as_coord(x)


def line_to_json(L: LineBundleClass) -> dict:
    return {"degree": L.degree, "a": coord_to_json(L.a), "b": coord_to_json(L.b)}


def line_from_json(doc) -> LineBundleClass:
    validate(doc, "LineBundleClass")
    return LineBundleClass(doc["degree"], TorusPoint(coord_from_json(doc["a"]), coord_from_json(doc["b"])))


def atom_to_json(atom) -> dict:
    if isinstance(atom, Line):
        return {"kind": "line", "line": line_to_json(atom.line)}
    if isinstance(atom, Ext2):
        return {"kind": "ext", "rank": 2, "xi": line_to_json(atom.xi)}
    if isinstance(atom, StableAtom):
        p = atom.point
        return {"kind": "stable", "rank": atom.rank, "degree": atom.degree, "a": coord_to_json(p.a), "b": coord_to_json(p.b)}
    if isinstance(atom, RealLine):
        return {"kind": "real_line", "line": line_to_json(atom.line)}
    if isinstance(atom, SelfExt):
        return {"kind": "self_ext", "xi": line_to_json(atom.xi)}
    if isinstance(atom, RealStable):
        return {"kind": "real_stable", "rank": atom.rank, "degree": atom.degree, "key": coord_to_json(atom.key)}
    if isinstance(atom, ConjPair):
        return {"kind": "conj_pair", "atom": atom_to_json(atom.atom)}
    raise UsageError(f"unknown atom {atom!r}")


def atom_from_json(doc):
    kind = doc.get("kind") if isinstance(doc, dict) else None
    if kind == "line":
        return Line(line_from_json(doc["line"]))
    if kind == "ext":
        return self_extension(line_from_json(doc["xi"]), doc.get("rank", 2))
    if kind == "stable":
        p = TorusPoint(coord_from_json(doc["a"]), coord_from_json(doc["b"]))
        return StableAtom(doc["rank"], doc["degree"], p)
    if kind == "real_line":
        return RealLine(line_from_json(doc["line"]))
    if kind == "self_ext":
        return SelfExt(line_from_json(doc["xi"]))
    if kind == "real_stable":
        return RealStable(doc["rank"], doc["degree"], coord_from_json(doc["key"]))
    if kind == "conj_pair":
        return ConjPair(atom_from_json(doc["atom"]))
    raise UsageError(f"unknown atom kind {kind!r}")


def desc_to_json(D: BundleDesc) -> dict:
    return {
        "flavor": D.flavor.value,
        "rank": D.rank,
        "degree": D.degree,
        "atoms": [atom_to_json(a) for a in D.atoms],
    }


def desc_from_json(doc) -> BundleDesc:
    # higher iterated extensions are schema-valid but unclassified; let
    # atom_from_json raise the more specific error for those
    if isinstance(doc, dict):
        for atom in doc.get("atoms", ()):
            inner = atom.get("atom", atom) if isinstance(atom, dict) else None
            if isinstance(inner, dict) and inner.get("kind") == "ext" and inner.get("rank", 2) != 2:
                atom_from_json(inner)
    validate(doc, "BundleDesc")
    return BundleDesc(tuple(atom_from_json(a) for a in doc["atoms"]), Flavor(doc["flavor"]))


def _jsonable(value):
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, Fraction):
        return str(value)
    return value


def moduli_to_json(M: ModuliDesc, real_locus=None) -> dict:
    doc = {
        "r": M.r,
        "d": M.d,
        "kind": M.kind.value,
        "dimension": M.dimension,
        "parametrization": _jsonable(M.parametrization),
        "real_locus": real_locus,
    }
    if M.kind is ModuliKind.CIRCLE:
        doc["circumference"] = str(M.parametrization["circumference"])
    return doc


def _fractions_back(value):
    if isinstance(value, dict):
        return {k: _fractions_back(v) for k, v in value.items()}
    if isinstance(value, str):
        try:
            return Fraction(value)
        except ValueError:
            return value
    return value


def moduli_from_json(doc) -> ModuliDesc:
    validate(doc, "ModuliDesc")
    return ModuliDesc(
        doc["r"],
        doc["d"],
        ModuliKind(doc["kind"]),
        doc["dimension"],
        _fractions_back(doc["parametrization"]),
    )
