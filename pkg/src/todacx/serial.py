"""JSON encoding of complexes, modules, higher data, DGAs and secondary data.

Integers are written as decimal strings so nothing is lost to 64-bit
parsers; on input plain JSON integers are accepted as well.  Output is
deterministic: keys are sorted and degree keys are decimal strings.
"""

from __future__ import annotations

import json
from typing import Any, Dict, List

import jsonschema

from .chaincx import ChainComplex, GradedModule
from .dga import Dga, DgaCategory, OBJECT
from .higher import COMPLEXES, HigherComplexData
from .intlin import FgAbGroup, IntMatrix
from .secondary import SecondaryData

INT = {"anyOf": [{"type": "string", "pattern": "^-?[0-9]+$"}, {"type": "integer"}]}
VEC = {"type": "array", "items": INT}
MAT = {"type": "array", "items": VEC}
DEG_KEY = "^-?[0-9]+$"

CHAIN_COMPLEX = {
    "type": "object",
    "required": ["lo", "hi", "ranks"],
    "properties": {
        "lo": INT, "hi": INT,
        "ranks": VEC,
        "diffs": {"type": "object", "patternProperties": {DEG_KEY: MAT}, "additionalProperties": False},
    },
    "additionalProperties": False,
}

GRADED_MODULE = {
    "type": "object",
    "patternProperties": {"^[0-9]+$": VEC},
    "additionalProperties": False,
}

HIGHER_COMPLEX = {
    "type": "object",
    "required": ["order", "objects", "core_degrees", "maps"],
    "properties": {
        "order": INT,
        "objects": {"type": "array", "items": CHAIN_COMPLEX, "minItems": 2},
        "core_degrees": VEC,
        "maps": {"type": "object", "patternProperties": {"^[0-9]+,[0-9]+$": VEC}, "additionalProperties": False},
    },
    "additionalProperties": False,
}

DGA = {
    "type": "object",
    "required": ["complex", "mult", "unit"],
    "properties": {
        "complex": CHAIN_COMPLEX,
        "mult": {"type": "object",
                 "patternProperties": {"^-?[0-9]+,-?[0-9]+$": {"type": "array", "items": MAT}},
                 "additionalProperties": False},
        "unit": VEC,
    },
    "additionalProperties": False,
}

SECONDARY_DATA = {
    "type": "object",
    "required": ["modules", "blocks"],
    "properties": {
        "name": {"type": "string"},
        "modules": {"type": "array", "items": GRADED_MODULE, "minItems": 4, "maxItems": 4},
        "blocks": {"type": "object",
                   "patternProperties": {"^[fghST](00|01|10|11)$": {
                       "type": "object", "patternProperties": {DEG_KEY: MAT}, "additionalProperties": False}},
                   "additionalProperties": False},
    },
    "additionalProperties": False,
}

SCHEMAS = {
    "chain_complex": CHAIN_COMPLEX,
    "graded_module": GRADED_MODULE,
    "higher_complex": HIGHER_COMPLEX,
    "dga": DGA,
    "secondary_data": SECONDARY_DATA,
}


class InputError(ValueError):
    """Schema or consistency failure; ``pointer`` names the offending field."""

    def __init__(self, pointer: str, message: str):
        super().__init__(f"{pointer}: {message}")
        self.pointer = pointer
        self.message = message


def _pointer(path) -> str:
    return "/" + "/".join(str(p) for p in path) if path else "/"


def check(kind: str, obj: Any, where: str = "") -> None:
    try:
        jsonschema.validate(obj, SCHEMAS[kind])
    except jsonschema.ValidationError as e:
        raise InputError(where + _pointer(e.absolute_path), e.message) from None


def _i(x) -> int:
    return int(x)


def _s(x: int) -> str:
    return str(int(x))


def _vec_out(v) -> List[str]:
    return [_s(x) for x in v]


def _mat_out(m: IntMatrix) -> List[List[str]]:
    return [_vec_out(r) for r in m.tolist()]


def _mat_in(rows, shape=None) -> IntMatrix:
    data = [[_i(x) for x in r] for r in rows]
    if shape is not None:
        return IntMatrix(shape[0], shape[1], data)
    return IntMatrix.from_rows(data)


# --------------------------------------------------------------- encode

def chain_complex_to_json(c: ChainComplex) -> Dict[str, Any]:
    out = {"lo": _s(c.lo), "hi": _s(c.hi),
           "ranks": [_s(c.rank(n)) for n in c.degrees()]}
    diffs = {str(n): _mat_out(m) for n, m in sorted(c.diffs.items())}
    if diffs:
        out["diffs"] = diffs
    return out


def graded_module_to_json(m: GradedModule) -> Dict[str, Any]:
    return {str(n): _vec_out(g.factors) for n, g in m.groups}


def higher_to_json(d: HigherComplexData) -> Dict[str, Any]:
    return {
        "order": _s(d.order),
        "objects": [chain_complex_to_json(o) for o in d.objects],
        "core_degrees": _vec_out(d.degrees),
        "maps": {f"{k},{i}": _vec_out(v) for (k, i), v in sorted(d.maps.items())},
    }


def dga_to_json(a: Dga) -> Dict[str, Any]:
    return {
        "complex": chain_complex_to_json(a.underlying),
        "mult": {f"{i},{j}": [[_vec_out(cell) for cell in row] for row in tab]
                 for (i, j), tab in sorted(a.mult.items())},
        "unit": _vec_out(a.unit),
    }


def secondary_to_json(s: SecondaryData) -> Dict[str, Any]:
    return {
        "name": s.name,
        "modules": [graded_module_to_json(m) for m in s.modules],
        "blocks": {key: {str(n): _mat_out(m) for n, m in sorted(tab.items())}
                   for key, tab in sorted(s.blocks.items())},
    }


# --------------------------------------------------------------- decode

def chain_complex_from_json(obj, where: str = "") -> ChainComplex:
    check("chain_complex", obj, where)
    lo, hi = _i(obj["lo"]), _i(obj["hi"])
    ranks = [_i(r) for r in obj["ranks"]]
    if len(ranks) != max(hi - lo + 1, 0):
        raise InputError(where + "/ranks", f"expected {hi - lo + 1} ranks for degrees {lo}..{hi}")
    if any(r < 0 for r in ranks):
        raise InputError(where + "/ranks", "ranks must be non-negative")
    rk = {lo + t: r for t, r in enumerate(ranks)}
    diffs = {}
    for key, rows in obj.get("diffs", {}).items():
        n = int(key)
        shape = (rk.get(n - 1, 0), rk.get(n, 0))
        try:
            diffs[n] = _mat_in(rows, shape)
        except ValueError:
            raise InputError(f"{where}/diffs/{key}", f"expected a {shape[0]}x{shape[1]} matrix") from None
    return ChainComplex(rk, diffs)


def graded_module_from_json(obj, where: str = "") -> GradedModule:
    check("graded_module", obj, where)
    groups = {}
    for key, factors in obj.items():
        try:
            groups[int(key)] = FgAbGroup([_i(f) for f in factors])
        except ValueError as e:
            raise InputError(f"{where}/{key}", str(e)) from None
    return GradedModule(groups)


def higher_from_json(obj, where: str = "", category=None) -> HigherComplexData:
    check("higher_complex", obj, where)
    objects = [chain_complex_from_json(o, f"{where}/objects/{t}") for t, o in enumerate(obj["objects"])]
    maps = {}
    for key, v in obj["maps"].items():
        k, i = (int(x) for x in key.split(","))
        maps[(k, i)] = [_i(x) for x in v]
    try:
        d = HigherComplexData(_i(obj["order"]), objects, [_i(x) for x in obj["core_degrees"]], maps,
                              category or COMPLEXES)
    except ValueError as e:
        raise InputError(where or "/", str(e)) from None
    for (k, i), v in d.maps.items():
        want = d.carrier(k, i).rank(d.degree(k, i))
        if len(v) != want:
            raise InputError(f"{where}/maps/{k},{i}", f"expected a vector of length {want}")
    return d


def dga_from_json(obj, where: str = "") -> Dga:
    check("dga", obj, where)
    cx = chain_complex_from_json(obj["complex"], where + "/complex")
    mult = {}
    for key, tab in obj["mult"].items():
        i, j = (int(x) for x in key.split(","))
        mult[(i, j)] = [[[_i(x) for x in cell] for cell in row] for row in tab]
    try:
        return Dga(cx, mult, [_i(x) for x in obj["unit"]])
    except ValueError as e:
        raise InputError(where + "/mult", str(e)) from None


def secondary_from_json(obj, where: str = "") -> SecondaryData:
    check("secondary_data", obj, where)
    mods = tuple(graded_module_from_json(m, f"{where}/modules/{t}") for t, m in enumerate(obj["modules"]))
    blocks = {}
    for key, tab in obj["blocks"].items():
        blocks[key] = {}
        for n, rows in tab.items():
            try:
                blocks[key][int(n)] = _mat_in(rows)
            except ValueError as e:
                raise InputError(f"{where}/blocks/{key}/{n}", str(e)) from None
    return SecondaryData(obj.get("name", "input"), mods, blocks)


def dga_higher(a: Dga, degrees, maps) -> HigherComplexData:
    """One-object higher data over a DGA (all objects are the single object)."""
    order = max((k for k, _ in maps), default=0)
    return HigherComplexData(order, [OBJECT] * (len(degrees) + 1), degrees, maps, DgaCategory(a))


def dumps(obj: Any) -> str:
    """Deterministic JSON text."""
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, indent=2)


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError("/", f"malformed JSON: {e.msg} at line {e.lineno} column {e.colno}") from None

