"""Command-line frontend.

Every subcommand reads one JSON document (a file path, ``-`` for stdin, or
``--json`` inline) and prints a deterministic report.  Exit status 0 means
the computation finished, 1 a mathematical obstruction (no defining system
exists), 2 invalid input.
"""

from __future__ import annotations

import argparse
import sys
from typing import Any, Dict, List, Optional, Tuple

from . import serial
from .chaincx import hom_complex, homology_groups
from .dga import InvalidSystem, DefiningSystem, massey_set, massey_value, validate_dga
from .higher import CoherenceError, bracket_class, bracket_set, bracket_value, validate_higher, vanishes
from .intlin import FgAbGroup, Subgroup, group_name
from .pathcx import path_power
from .secondary import SecondaryError, defining_system_set, fixtures, toda_secondary

EXIT_OK, EXIT_OBSTRUCTED, EXIT_INVALID = 0, 1, 2


class Failure(Exception):
    def __init__(self, status: int, report: Dict[str, Any]):
        super().__init__(report.get("error", ""))
        self.status = status
        self.report = report


def _invalid(pointer: str, message: str) -> Failure:
    return Failure(EXIT_INVALID, {"error": "invalid input", "pointer": pointer, "message": message})


def _coords(e) -> List[str]:
    return [str(int(x)) for x in e]


def _name(g: FgAbGroup) -> str:
    return group_name(g.factors)


def _subgroup(s: Subgroup) -> Dict[str, Any]:
    order = s.order()
    return {"generators": [_coords(g) for g in s.generators],
            "order": "inf" if order == float("inf") else str(order),
            "structure": _name(s.structure())}


def _homology_report(c) -> Dict[str, str]:
    return {f"H{n}": _name(g) for n, g in sorted(homology_groups(c).items()) if not g.is_trivial()}


# ------------------------------------------------------------ commands

def cmd_homology(doc, args) -> Dict[str, Any]:
    return _homology_report(serial.chain_complex_from_json(doc))


def cmd_hom_complex(doc, args) -> Dict[str, Any]:
    if not isinstance(doc, dict) or set(doc) != {"source", "target"}:
        raise _invalid("/", "expected an object with keys source and target")
    a = serial.chain_complex_from_json(doc["source"], "/source")
    b = serial.chain_complex_from_json(doc["target"], "/target")
    h = hom_complex(a, b)
    return {"complex": serial.chain_complex_to_json(h), "homology": _homology_report(h)}


def cmd_path(doc, args) -> Dict[str, Any]:
    if not isinstance(doc, dict) or "complex" not in doc:
        raise _invalid("/", "expected an object with keys complex and n")
    x = serial.chain_complex_from_json(doc["complex"], "/complex")
    try:
        n = int(doc.get("n", 1))
    except (TypeError, ValueError):
        raise _invalid("/n", "n must be an integer") from None
    if n < 0:
        raise _invalid("/n", "n must be non-negative")
    p = path_power(x, n)
    return {"n": str(n), "complex": serial.chain_complex_to_json(p.carrier),
            "labels": ["{" + ",".join(map(str, lab)) + "}" for lab in p.labels],
            "homology": _homology_report(p.carrier)}


def cmd_check_higher(doc, args) -> Dict[str, Any]:
    d = serial.higher_from_json(doc)
    bad = validate_higher(d)
    if bad is not None:
        raise Failure(EXIT_INVALID, {"ok": False, "violation": {
            "k": str(bad.k), "i": str(bad.i), "t": "cycle" if bad.t is None else str(bad.t),
            "message": bad.message}})
    return {"ok": True}


def _set_report(bs) -> Dict[str, Any]:
    out: Dict[str, Any] = {"ambient": _name(bs.ambient), "exact": bs.exact,
                           "partial": not bs.exact}
    if bs.empty:
        out["empty"] = True
        if bs.obstruction is not None:
            out["obstruction"] = {"k": str(bs.obstruction[0]), "i": str(bs.obstruction[1])}
        return out
    out["empty"] = False
    if bs.subgroup is not None:
        out["representative"] = _coords(bs.representative)
        out["indeterminacy"] = _subgroup(bs.subgroup)
    else:
        out["values"] = [_coords(v) for v in bs.values]
    out["vanishes"] = bs.vanishes()
    return out


def cmd_toda(doc, args) -> Dict[str, Any]:
    d = serial.higher_from_json(doc)
    bad = validate_higher(d)
    if bad is not None:
        raise Failure(EXIT_INVALID, {"error": "incoherent data", "violation": list(map(str, bad.as_tuple()))})
    if d.order == d.length - 2:
        c = bracket_class(bracket_value(d))
        return {"mode": "value", "ambient": _name(c.group), "class": _coords(c.element),
                "degree": str(c.degree), "vanishes": vanishes(d)}
    if d.order != 0:
        raise _invalid("/order", "give either order-0 data or a full defining system")
    bs = bracket_set(d, search_bound=args.bound)
    report = {"mode": "set", **_set_report(bs)}
    if bs.empty:
        raise Failure(EXIT_OBSTRUCTED, report)
    return report


def _secondary_report(data) -> Dict[str, Any]:
    r = toda_secondary(data)
    comps = []
    for kind, n, grp in r.split.components():
        el = (r.value_hom if kind == "hom" else r.value_ext)[n]
        comps.append({"kind": kind, "degree": str(n), "group": _name(grp), "value": _coords(el)})
    bs = defining_system_set(data)
    return {
        "name": data.name,
        "ambient": _name(r.ambient),
        "components": comps,
        "value": _coords(r.value_class),
        "indeterminacy": _subgroup(r.indeterminacy),
        "quotient": {"group": _name(r.indeterminacy.quotient_group()), "class": _coords(r.quotient_class)},
        "vanishes": r.vanishes,
        "form": str(r.form),
        "all_systems": _set_report(bs),
    }


def cmd_toda2(doc, args) -> Dict[str, Any]:
    data = serial.secondary_from_json(doc)
    try:
        return _secondary_report(data)
    except SecondaryError as e:
        raise _invalid("/blocks", str(e)) from None


def cmd_massey(doc, args) -> Dict[str, Any]:
    if not isinstance(doc, dict) or not {"dga", "classes", "degrees"} <= set(doc):
        raise _invalid("/", "expected keys dga, classes, degrees (and optionally system)")
    a = serial.dga_from_json(doc["dga"], "/dga")
    bad = validate_dga(a)
    if bad is not None:
        raise _invalid("/dga", f"{bad.law} fails at {bad.where}: {bad.message}")
    try:
        degrees = [int(x) for x in doc["degrees"]]
        classes = [[int(x) for x in v] for v in doc["classes"]]
    except (TypeError, ValueError):
        raise _invalid("/classes", "classes and degrees must be integers") from None
    if len(classes) != len(degrees) or len(classes) < 2:
        raise _invalid("/classes", "need one class per degree and at least two classes")
    for t, (v, m) in enumerate(zip(classes, degrees)):
        if len(v) != a.rank(m):
            raise _invalid(f"/classes/{t}", f"expected a vector of length {a.rank(m)}")
    if "system" in doc:
        elems = {(0, i + 1): v for i, v in enumerate(classes)}
        for key, v in doc["system"].items():
            try:
                k, i = (int(x) for x in key.split(","))
                elems[(k, i)] = [int(x) for x in v]
            except ValueError:
                raise _invalid(f"/system/{key}", "keys are 'k,i' and values integer vectors") from None
        try:
            m = massey_value(a, DefiningSystem(degrees, elems))
        except InvalidSystem as e:
            raise _invalid("/system", str(e)) from None
        out = {"mode": "value", "ambient": _name(m.group), "class": _coords(m.class_),
               "degree": str(m.degree), "cycle": _coords(m.cycle)}
        if m.indeterminacy is not None:
            out["indeterminacy"] = _subgroup(m.indeterminacy)
            out["quotient"] = _coords(m.quotient_class)
            out["vanishes"] = m.indeterminacy.contains(m.class_)
        return out
    try:
        bs = massey_set(a, classes, degrees, bound=args.bound)
    except CoherenceError as e:
        raise _invalid("/classes", f"classes are not cycles: {e}") from None
    report = {"mode": "set", **_set_report(bs)}
    if bs.empty:
        raise Failure(EXIT_OBSTRUCTED, report)
    return report


def cmd_fixtures(doc, args) -> Dict[str, Any]:
    fx = fixtures()
    names = sorted(fx) if args.name is None else [args.name]
    for n in names:
        if n not in fx:
            raise _invalid("--name", f"unknown fixture {n!r}; known: {', '.join(sorted(fx))}")
    if args.run == "toda2":
        out = {n: _secondary_report(fx[n]) for n in names}
    else:
        out = {n: serial.secondary_to_json(fx[n]) for n in names}
    return out[names[0]] if args.name is not None else out


COMMANDS = {
    "homology": (cmd_homology, "homology groups of a chain complex"),
    "hom-complex": (cmd_hom_complex, "mapping complex Hom(source, target) and its homology"),
    "path": (cmd_path, "iterated path complex P^n of a chain complex"),
    "check-higher": (cmd_check_higher, "validate higher chain complex data"),
    "toda": (cmd_toda, "higher Toda bracket value or set"),
    "toda2": (cmd_toda2, "secondary Toda bracket of graded-module data"),
    "massey": (cmd_massey, "Massey product value or set in a DGA"),
    "fixtures": (cmd_fixtures, "built-in secondary bracket fixtures"),
}


# ----------------------------------------------------------- rendering

def _table(rows: List[Tuple[str, str]]) -> str:
    if not rows:
        return ""
    w = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(w)}  {v}" for k, v in rows)


def _flatten(obj, prefix="") -> List[Tuple[str, str]]:
    rows = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            rows.extend(_flatten(obj[k], f"{prefix}.{k}" if prefix else str(k)))
    elif isinstance(obj, list) and obj and all(isinstance(x, (dict, list)) for x in obj):
        for t, x in enumerate(obj):
            rows.extend(_flatten(x, f"{prefix}[{t}]"))
    elif isinstance(obj, list):
        rows.append((prefix, "(" + ", ".join(map(str, obj)) + ")"))
    elif isinstance(obj, bool):
        rows.append((prefix, "yes" if obj else "no"))
    else:
        rows.append((prefix, str(obj)))
    return rows


def render_text(report: Dict[str, Any]) -> str:
    """Aligned ``key  value`` table; degree-indexed data stays on one line each."""
    if "complex" in report and isinstance(report["complex"], dict) and "ranks" in report["complex"]:
        cx = report["complex"]
        lo = int(cx["lo"])
        rows = [(f"deg {lo + t}", f"rank {r}") for t, r in enumerate(cx["ranks"])]
        rest = {k: v for k, v in report.items() if k != "complex"}
        return _table(rows + _flatten(rest))
    return _table(_flatten(report))


def emit(report: Dict[str, Any], fmt: str, stream) -> None:
    text = serial.dumps(report) if fmt == "json" else render_text(report)
    stream.write(text + "\n")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="todacx", description="Exact higher Toda brackets and Massey products over Z.")
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, help_) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--format", choices=["json", "text"], default="json")
        if name == "fixtures":
            sp.add_argument("--name", default=None)
            sp.add_argument("--run", choices=["toda2"], default=None)
            continue
        sp.add_argument("input", nargs="?", default=None, help="JSON file, or - for stdin")
        sp.add_argument("--json", dest="inline", default=None, help="inline JSON document")
        if name in ("toda", "massey"):
            sp.add_argument("--bound", type=int, default=1,
                            help="coefficient bound for kernel lattices on infinite or higher-order sets")
    return p


def _read(args) -> Optional[Any]:
    if getattr(args, "inline", None) is not None:
        return serial.loads(args.inline)
    src = getattr(args, "input", None)
    if src is None:
        if args.command == "fixtures":
            return None
        raise _invalid("/", "no input given (path, - or --json)")
    if src == "-":
        return serial.loads(sys.stdin.read())
    try:
        with open(src, encoding="utf-8") as fh:
            return serial.loads(fh.read())
    except OSError as e:
        raise _invalid("/", f"cannot read {src}: {e.strerror}") from None


def run(argv: Optional[List[str]] = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    fmt = args.format
    try:
        doc = _read(args)
        report = COMMANDS[args.command][0](doc, args)
        status = EXIT_OK
    except Failure as f:
        report, status = f.report, f.status
    except serial.InputError as e:
        report, status = {"error": "invalid input", "pointer": e.pointer, "message": e.message}, EXIT_INVALID
    emit(report, fmt, stdout)
    return status


def main(argv: Optional[List[str]] = None) -> int:
    sys.exit(run(argv))
