"""JSON configuration documents and result emission.

A document looks like::

    {
      "dimension": 2,
      "denominator": 2,
      "components": [{"id": "C1", "alpha": "-1/2"},
                     {"id": "E1", "nu": "2", "N": "-3/2"}],
      "strata": [{"subset": [], "class": {"L": "L^2 - L", "hodge": "(uv)^2 - uv"}},
                 {"subset": ["C1"], "class": {"L": "L"}}],
      "closed_strata": [{"subset": ["C1"], "class": {"L": "L + 1"}, "dim": 1}],
      "points": [{"name": "P", "on": ["C1", "C2"]}]
    }

Fractions are strings.  ``strata`` lists open strata; ``closed_strata``
may be given instead of (or alongside) them, in which case the open strata
follow by Moebius inversion and must agree.  ``points`` names blow-up
centres (one id: a point on that curve, two ids: a double point, none: a
free point).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional

from .errors import (DocumentSyntaxError, ExpressionSyntaxError, MpvError,
                     ScalingError, SchemaError)
from .exactring import RingElem, machine_dict, render
from .parsing import parse_expression, parse_fraction
from .stratconfig import (ClosedStrataInput, ComponentData, MotClass,
                          StratifiedConfig, open_from_closed, validate,
                          validate_closed)
from .surfblow import BlowupCenter


@dataclass
class Document:
    config: StratifiedConfig
    closed: Optional[ClosedStrataInput] = None
    points: Dict[str, BlowupCenter] = field(default_factory=dict)


def _expect(cond, message):
    if not cond:
        raise SchemaError(message)


def _parse_class(obj, m, where) -> MotClass:
    _expect(isinstance(obj, dict), f"{where}: class must be an object")
    unknown = set(obj) - {"L", "hodge"}
    _expect(not unknown, f"{where}: unknown class fields {sorted(unknown)}")
    _expect(obj, f"{where}: class needs an 'L' or 'hodge' expression")
    polys = {}
    for key, symbols in (("L", "L"), ("hodge", "uv")):
        if key not in obj:
            continue
        try:
            value = parse_expression(obj[key], m, symbols)
        except ExpressionSyntaxError as exc:
            raise ExpressionSyntaxError(f"{where}.{key}: {exc}") from None
        except ScalingError as exc:
            raise ScalingError(f"{where}.{key}: {exc}") from None
        _expect(value.is_polynomial(), f"{where}.{key}: class must be a (Laurent) polynomial")
        polys[key] = value.as_laurent()
    return MotClass(polys.get("L"), polys.get("hodge"))


def _parse_subset(obj, where):
    _expect(isinstance(obj, list) and all(isinstance(x, str) for x in obj),
            f"{where}: subset must be a list of component ids")
    _expect(len(set(obj)) == len(obj), f"{where}: repeated id in subset")
    return frozenset(obj)


def _frac(value, where) -> Fraction:
    try:
        return parse_fraction(value)
    except ExpressionSyntaxError as exc:
        raise SchemaError(f"{where}: {exc}") from None


def parse_document(text: str) -> Document:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    _expect(isinstance(doc, dict), "document must be a JSON object")
    known = {"dimension", "denominator", "components", "strata", "closed_strata", "points"}
    unknown = set(doc) - known
    _expect(not unknown, f"unknown top-level fields {sorted(unknown)}")
    for key in ("dimension", "denominator"):
        _expect(key in doc, f"missing field {key!r}")
        _expect(isinstance(doc[key], int) and not isinstance(doc[key], bool) and doc[key] >= 1,
                f"{key} must be a positive integer")
    n, m = doc["dimension"], doc["denominator"]

    comps = []
    raw_comps = doc.get("components", [])
    _expect(isinstance(raw_comps, list), "components must be a list")
    for idx, obj in enumerate(raw_comps):
        where = f"components[{idx}]"
        _expect(isinstance(obj, dict), f"{where} must be an object")
        _expect(isinstance(obj.get("id"), str) and obj["id"], f"{where}: missing id")
        unknown = set(obj) - {"id", "alpha", "nu", "N"}
        _expect(not unknown, f"{where}: unknown fields {sorted(unknown)}")
        has_alpha = "alpha" in obj
        has_res = "nu" in obj or "N" in obj
        _expect(has_alpha != has_res, f"{where}: give exactly one of alpha or (nu, N)")
        if has_alpha:
            comps.append(ComponentData(obj["id"], alpha=_frac(obj["alpha"], where + ".alpha")))
        else:
            _expect("nu" in obj and "N" in obj, f"{where}: resolution data needs both nu and N")
            comps.append(ComponentData(obj["id"], nu=_frac(obj["nu"], where + ".nu"),
                                       N=_frac(obj["N"], where + ".N")))

    strata = None
    if "strata" in doc:
        _expect(isinstance(doc["strata"], list), "strata must be a list")
        strata = {}
        for idx, obj in enumerate(doc["strata"]):
            where = f"strata[{idx}]"
            _expect(isinstance(obj, dict) and "subset" in obj and "class" in obj,
                    f"{where}: needs 'subset' and 'class'")
            key = _parse_subset(obj["subset"], where)
            _expect(key not in strata, f"{where}: duplicate subset {sorted(key)}")
            strata[key] = _parse_class(obj["class"], m, where)

    closed = None
    if "closed_strata" in doc:
        _expect(isinstance(doc["closed_strata"], list), "closed_strata must be a list")
        raw = {}
        for idx, obj in enumerate(doc["closed_strata"]):
            where = f"closed_strata[{idx}]"
            _expect(isinstance(obj, dict) and {"subset", "class", "dim"} <= set(obj),
                    f"{where}: needs 'subset', 'class' and 'dim'")
            _expect(isinstance(obj["dim"], int) and obj["dim"] >= 0, f"{where}: dim must be a nonnegative integer")
            key = _parse_subset(obj["subset"], where)
            _expect(key not in raw, f"{where}: duplicate subset {sorted(key)}")
            raw[key] = (_parse_class(obj["class"], m, where), obj["dim"])
        closed = ClosedStrataInput(raw)
        report = validate_closed(closed, n)
        _expect(report.ok, "closed_strata: " + "; ".join(report.violations))
        derived = StratifiedConfig(n, m, comps, open_from_closed(closed))
        if strata is None:
            strata = derived.open_strata
        else:
            _expect(StratifiedConfig(n, m, comps, strata).open_strata == derived.open_strata,
                    "strata and closed_strata disagree")
    if strata is None:
        strata = {}

    config = StratifiedConfig(n, m, tuple(comps), strata)
    report = validate(config)
    if not report.ok:
        scaling = [v for v in report.violations if v.startswith("scaling mismatch")]
        if scaling:
            raise ScalingError("; ".join(scaling))
        raise SchemaError("; ".join(report.violations))

    points = {}
    raw_points = doc.get("points", [])
    _expect(isinstance(raw_points, list), "points must be a list")
    for idx, obj in enumerate(raw_points):
        where = f"points[{idx}]"
        _expect(isinstance(obj, dict) and isinstance(obj.get("name"), str), f"{where}: needs a name")
        on = obj.get("on", [])
        _expect(isinstance(on, list) and len(on) <= 2 and all(x in config.ids for x in on),
                f"{where}: 'on' must list at most two known component ids")
        kind = ("free", "curve", "point")[len(on)]
        try:
            points[obj["name"]] = BlowupCenter(kind, tuple(on))
        except MpvError as exc:
            raise SchemaError(f"{where}: {exc}") from None
    return Document(config, closed, points)


def parse_config(text: str) -> StratifiedConfig:
    return parse_document(text).config


def _class_json(cl: MotClass, m: int) -> dict:
    out = {}
    if cl.lpoly is not None:
        out["L"] = render(RingElem(cl.lpoly), m)
    if cl.hodge is not None:
        out["hodge"] = render(RingElem(cl.hodge), m)
    return out


def _frac_text(q: Fraction) -> str:
    return str(q)


def document_dict(c: StratifiedConfig, closed: Optional[ClosedStrataInput] = None,
                  points: Optional[Dict[str, BlowupCenter]] = None) -> dict:
    comps = []
    for comp in c.components:
        if comp.has_alpha:
            comps.append({"id": comp.id, "alpha": _frac_text(comp.alpha)})
        else:
            comps.append({"id": comp.id, "nu": _frac_text(comp.nu), "N": _frac_text(comp.N)})
    order = {cid: i for i, cid in enumerate(c.ids)}

    def ordered(key):
        return sorted(key, key=lambda x: order.get(x, len(order)))

    doc = {
        "dimension": c.n,
        "denominator": c.m,
        "components": comps,
        "strata": [{"subset": ordered(k), "class": _class_json(cl, c.m)}
                   for k, cl in c.sorted_strata()],
    }
    if closed is not None:
        items = sorted(closed.strata.items(), key=lambda kv: (len(kv[0]), ordered(kv[0])))
        doc["closed_strata"] = [{"subset": ordered(k), "class": _class_json(cl, c.m), "dim": d}
                                for k, (cl, d) in items]
    if points:
        doc["points"] = [{"name": name, "on": list(ctr.ids)} for name, ctr in points.items()]
    return doc


def dump_config(c: StratifiedConfig, closed: Optional[ClosedStrataInput] = None,
                points: Optional[Dict[str, BlowupCenter]] = None) -> str:
    return json.dumps(document_dict(c, closed, points), indent=2) + "\n"


def emit(value, m: int, fmt: str = "pretty") -> str:
    """Pretty text or the JSON term list of an exact value."""
    value = RingElem.coerce(value)
    if fmt == "pretty":
        return render(value, m, "pretty")
    if fmt == "json":
        return json.dumps(machine_dict(value, m))
    raise ValueError(f"unknown format {fmt!r}")
