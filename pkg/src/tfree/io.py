"""JSON wire formats for instances, extended points and reports.

Rationals travel as strings ``"p/q"`` (integers are also accepted on input).
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .formulation import ExtendedPoint
from .graph import FACTOR, Instance, make_instance


class FormatError(ValueError):
    """Malformed input file; the message names the offending field."""


def fmt_fraction(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_fraction(raw: Any, where: str) -> Fraction:
    if isinstance(raw, bool):
        raise FormatError(f"{where}: expected rational, got {raw!r}")
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, str):
        text = raw.strip()
        if "." in text or "e" in text.lower():
            raise FormatError(f"{where}: decimals are not accepted, use 'p/q' ({raw!r})")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            pass
    raise FormatError(f"{where}: expected 'p/q' or an integer, got {raw!r}")


def _int(raw: Any, where: str) -> int:
    if isinstance(raw, bool) or not isinstance(raw, int):
        raise FormatError(f"{where}: expected integer, got {raw!r}")
    return raw


def loads_json(text: str, what: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{what}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def instance_from_json(data: Any) -> Instance:
    if not isinstance(data, dict):
        raise FormatError("instance: expected a JSON object")
    for key in ("vertices", "edges"):
        if not isinstance(data.get(key), list):
            raise FormatError(f"instance: field '{key}' must be a list")
    vertices, b = [], {}
    for i, v in enumerate(data["vertices"]):
        if not isinstance(v, dict):
            raise FormatError(f"vertices[{i}]: expected object")
        vid = _int(v.get("id"), f"vertices[{i}].id")
        vertices.append(vid)
        b[vid] = _int(v.get("b"), f"vertices[{i}].b")
    edges, weights = [], {}
    for i, e in enumerate(data["edges"]):
        if not isinstance(e, dict):
            raise FormatError(f"edges[{i}]: expected object")
        eid = _int(e.get("id"), f"edges[{i}].id")
        edges.append((eid, _int(e.get("u"), f"edges[{i}].u"), _int(e.get("v"), f"edges[{i}].v")))
        weights[eid] = parse_fraction(e.get("w", 0), f"edges[{i}].w")
    tris = []
    for i, t in enumerate(data.get("triangles", [])):
        if not isinstance(t, list) or len(t) != 3:
            raise FormatError(f"triangles[{i}]: expected a list of three edge ids")
        tris.append(tuple(_int(x, f"triangles[{i}][{j}]") for j, x in enumerate(t)))
    mode = data.get("mode", FACTOR)
    if mode not in ("factor", "matching"):
        raise FormatError(f"mode: expected 'factor' or 'matching', got {mode!r}")
    return make_instance(vertices, edges, b, tris, weights, mode)


def instance_to_json(inst: Instance) -> dict:
    return {
        "vertices": [{"id": v, "b": inst.b[v]} for v in inst.graph.vertices],
        "edges": [
            {"id": e.id, "u": e.u, "v": e.v, "w": fmt_fraction(inst.weights[e.id])}
            for e in inst.graph.edges
        ],
        "triangles": [list(t) for t in inst.triangle_edges],
        "mode": inst.mode,
    }


def point_from_json(data: Any, inst: Instance) -> ExtendedPoint:
    if not isinstance(data, dict) or not isinstance(data.get("x"), dict):
        raise FormatError("point: expected an object with an 'x' map")
    x = {}
    for k, v in data["x"].items():
        try:
            eid = int(k)
        except ValueError:
            raise FormatError(f"x: key {k!r} is not an edge id") from None
        x[eid] = parse_fraction(v, f"x[{k}]")
    y = {}
    for i, item in enumerate(data.get("y", [])):
        if not isinstance(item, dict):
            raise FormatError(f"y[{i}]: expected object")
        t = _int(item.get("t"), f"y[{i}].t")
        J = item.get("j")
        if not isinstance(J, list):
            raise FormatError(f"y[{i}].j: expected list of edge ids")
        J = frozenset(_int(e, f"y[{i}].j") for e in J)
        y[(t, J)] = parse_fraction(item.get("v"), f"y[{i}].v")
    return ExtendedPoint(x, y)


def point_to_json(point: ExtendedPoint) -> dict:
    return {
        "x": {str(e): fmt_fraction(v) for e, v in sorted(point.x.items())},
        "y": [
            {"t": t, "j": sorted(J), "v": fmt_fraction(v)}
            for (t, J), v in sorted(point.y.items(), key=lambda kv: (kv[0][0], len(kv[0][1]), sorted(kv[0][1])))
        ],
    }


def separation_to_json(res) -> dict:
    cut = res.cut
    return {
        "status": res.status,
        "family": res.family,
        "S": sorted(cut.S) if cut else [],
        "F0": sorted(cut.F0) if cut else [],
        "F1": sorted(cut.F1) if cut else [],
        "lhs": None if res.lhs is None else fmt_fraction(res.lhs),
        "detail": res.detail,
    }


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"
