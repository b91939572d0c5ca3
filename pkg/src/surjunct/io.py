"""JSON encodings for groups, automata, patterns, configurations, SFTs,
group-ring elements, and analysis results."""
from __future__ import annotations

import dataclasses
import json
from fractions import Fraction

import jsonschema

from . import group as groups
from .errors import BudgetExceeded, RuleError, SurjunctError
from .group import Group
from .groupring import GroupRingElement
from .symbolic import (
    CellularAutomaton,
    FiniteConfig,
    LocalRule,
    Pattern,
    SftDescriptor,
    ZConfig,
    _NotAlmostEqual,
)

INT_LIST = {"type": "array", "items": {"type": "integer"}}

GROUP_SCHEMA = {
    "type": "object",
    "required": ["type"],
    "properties": {
        "type": {"enum": ["Z", "finite", "builder"]},
        "order": {"type": "integer", "minimum": 1},
        "table": {"type": "array", "items": INT_LIST},
        "name": {"enum": ["cyclic", "dihedral", "symmetric", "product"]},
        "args": {"type": "array"},
    },
}

CA_SCHEMA = {
    "type": "object",
    "required": ["group", "alphabet", "memory", "rule"],
    "properties": {
        "group": GROUP_SCHEMA,
        "alphabet": {"type": "integer", "minimum": 2},
        "memory": {**INT_LIST, "minItems": 1},
        "rule": {**INT_LIST, "minItems": 1},
        "defined": {"type": "array", "items": {"type": "boolean"}},
    },
}

SFT_SCHEMA = {
    "type": "object",
    "required": ["group", "alphabet", "window", "forbidden"],
    "properties": {
        "group": GROUP_SCHEMA,
        "alphabet": {"type": "integer", "minimum": 2},
        "window": INT_LIST,
        "forbidden": {"type": "array", "items": INT_LIST},
    },
}

PATTERN_SCHEMA = {
    "type": "object",
    "required": ["domain", "values"],
    "properties": {"domain": INT_LIST, "values": INT_LIST},
}

GOE_SCHEMA = {
    "type": "object",
    "required": ["window", "patterns"],
    "properties": {"window": INT_LIST, "patterns": {"type": "array", "items": INT_LIST}},
}

RING_SCHEMA = {
    "type": "object",
    "required": ["p", "group", "terms"],
    "properties": {
        "p": {"type": "integer", "minimum": 2},
        "group": GROUP_SCHEMA,
        "terms": {"type": "array", "items": {**INT_LIST, "minItems": 2, "maxItems": 2}},
    },
}

REPORT_SCHEMA = {
    "type": "object",
    "required": ["command", "version", "result"],
    "properties": {
        "command": {"type": "object"},
        "version": {"type": "string"},
        "inputs": {"type": "object"},
        "result": {},
        "timing": {"type": "number"},
    },
}


class ParseError(SurjunctError, ValueError):
    pass


def validate(data, schema, what: str) -> None:
    try:
        jsonschema.validate(data, schema)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ParseError(f"invalid {what} at {path}: {exc.message}") from None


# --- groups ------------------------------------------------------------------


def group_to_json(g: Group) -> dict:
    if g.descriptor is not None:
        return g.descriptor
    return {"type": "finite", "order": g.order, "table": g.table.tolist()}


def group_from_json(data) -> Group:
    validate(data, GROUP_SCHEMA, "group descriptor")
    kind = data["type"]
    try:
        if kind == "Z":
            return groups.integers()
        if kind == "finite":
            g = groups.from_table(data["table"])
            if "order" in data and data["order"] != g.order:
                raise ParseError("group order does not match table")
            return g
        name, args = data.get("name"), data.get("args", [])
        if name == "product":
            if len(args) != 2:
                raise ParseError("product builder takes two group descriptors")
            return groups.direct_product(group_from_json(args[0]), group_from_json(args[1]))
        if name not in groups.BUILDERS or len(args) != 1 or not isinstance(args[0], int):
            raise ParseError(f"builder {name!r} takes one integer argument")
        return groups.BUILDERS[name](args[0])
    except (SurjunctError, KeyError, TypeError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"invalid group descriptor: {exc}") from None


def parse_group_spec(spec: str) -> Group:
    """``Z``, ``cyclic:3``, ``symmetric:3``, ``product:cyclic:2,cyclic:2``."""
    if spec in ("Z", "z", "integers"):
        return groups.integers()
    name, _, arg = spec.partition(":")
    if name == "product":
        left, _, right = arg.partition(",")
        return groups.direct_product(parse_group_spec(left), parse_group_spec(right))
    if name not in groups.BUILDERS or not arg.isdigit():
        raise ParseError(f"unknown group spec {spec!r}")
    return groups.BUILDERS[name](int(arg))


# --- automata ----------------------------------------------------------------


def ca_to_json(T: CellularAutomaton) -> dict:
    out = {
        "group": group_to_json(T.group),
        "alphabet": T.k,
        "memory": list(T.memory),
        "rule": list(T.rule.table),
    }
    if T.rule.defined is not None:
        out["defined"] = list(T.rule.defined)
    return out


def ca_from_json(data) -> CellularAutomaton:
    validate(data, CA_SCHEMA, "cellular automaton")
    g = group_from_json(data["group"])
    try:
        mem = tuple(data["memory"])
        if list(mem) != sorted(set(mem)):
            raise ParseError("memory must be sorted and free of duplicates")
        defined = tuple(data["defined"]) if "defined" in data else None
        return CellularAutomaton(g, LocalRule(data["alphabet"], mem, tuple(data["rule"]), defined))
    except RuleError as exc:
        raise ParseError(f"invalid cellular automaton: {exc}") from None
    except SurjunctError as exc:
        raise ParseError(f"invalid cellular automaton: {exc}") from None


def sft_to_json(S: SftDescriptor) -> dict:
    return {
        "group": group_to_json(S.group),
        "alphabet": S.k,
        "window": list(S.window),
        "forbidden": [list(p) for p in S.forbidden],
    }


def sft_from_json(data) -> SftDescriptor:
    validate(data, SFT_SCHEMA, "SFT")
    try:
        return SftDescriptor(
            group_from_json(data["group"]),
            data["alphabet"],
            tuple(data["window"]),
            tuple(tuple(p) for p in data["forbidden"]),
        )
    except RuleError as exc:
        raise ParseError(str(exc)) from None


def goe_to_json(window, patterns) -> dict:
    return {"window": list(window), "patterns": [list(p.values) for p in patterns]}


def goe_from_json(data) -> list[Pattern]:
    validate(data, GOE_SCHEMA, "GOE list")
    dom = tuple(data["window"])
    return [Pattern(dom, tuple(v)) for v in data["patterns"]]


def ring_to_json(f: GroupRingElement) -> dict:
    return {"p": f.p, "group": group_to_json(f.group), "terms": [list(t) for t in f.terms]}


def ring_from_json(data) -> GroupRingElement:
    validate(data, RING_SCHEMA, "group-ring element")
    g = group_from_json(data["group"])
    try:
        return GroupRingElement.from_terms(g, data["p"], [tuple(t) for t in data["terms"]])
    except SurjunctError as exc:
        raise ParseError(str(exc)) from None


# --- generic result encoding -------------------------------------------------------


def config_to_json(x) -> dict:
    if isinstance(x, ZConfig):
        x = x.normalized()
        return {"left": list(x.left), "center": list(x.center), "right": list(x.right), "offset": x.offset}
    return {"values": list(x.values)}


def config_from_json(data):
    if "values" in data:
        return FiniteConfig(tuple(data["values"]))
    return ZConfig(tuple(data["left"]), tuple(data["center"]), tuple(data["right"]), data.get("offset", 0))


def to_json(obj):
    """Encode library values (dataclasses, configurations, errors) as JSON data."""
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (ZConfig, FiniteConfig)):
        return config_to_json(obj)
    if isinstance(obj, Pattern):
        return {"domain": list(obj.domain), "values": list(obj.values)}
    if isinstance(obj, CellularAutomaton):
        return ca_to_json(obj)
    if isinstance(obj, SftDescriptor):
        return sft_to_json(obj)
    if isinstance(obj, GroupRingElement):
        return ring_to_json(obj)
    if isinstance(obj, Group):
        return group_to_json(obj)
    if isinstance(obj, _NotAlmostEqual):
        return "NotAlmostEqual"
    if isinstance(obj, BudgetExceeded):
        return {"status": "unknown", "budget_exceeded": str(obj)}
    if isinstance(obj, BaseException):
        return {"error": type(obj).__name__, "message": str(obj)}
    if dataclasses.is_dataclass(obj):
        out = {"kind": type(obj).__name__}
        for f in dataclasses.fields(obj):
            if f.name.startswith("_"):
                continue
            out[f.name] = to_json(getattr(obj, f.name))
        return out
    if isinstance(obj, dict):
        return {str(k): to_json(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_json(v) for v in obj]
    if hasattr(obj, "tolist"):
        return obj.tolist()
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"
