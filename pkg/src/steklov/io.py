"""Graph JSON format and deterministic report serialization.

Graph format::

    {"vertices": [{"id": "v0", "measure": 1.0, "boundary": true}, ...],
     "edges": [{"u": "v0", "v": "v1", "weight": 1.0}, ...]}

Unknown fields are rejected; ``measure`` and ``weight`` default to 1.0 and
``boundary`` to false. Reports are written with 17 significant digits so they
can be replayed as fixtures; infinities are written as the strings
``"+inf"``/``"-inf"``.
"""
from __future__ import annotations

import json
import math
import sys
from pathlib import Path

import numpy as np

from .errors import GraphFormatError
from .graph import Graph, build_graph

_TOP = {"vertices", "edges"}
_VERTEX = {"id", "measure", "boundary"}
_EDGE = {"u", "v", "weight"}


def _number(x, what):
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise GraphFormatError(f"{what} must be a number, got {x!r}")
    return float(x)


def graph_from_json(obj) -> Graph:
    if not isinstance(obj, dict):
        raise GraphFormatError("graph JSON must be an object")
    unknown = set(obj) - _TOP
    if unknown:
        raise GraphFormatError(f"unknown top-level fields: {sorted(unknown)}")
    if "vertices" not in obj:
        raise GraphFormatError("missing field 'vertices'")
    verts = []
    for item in obj["vertices"]:
        if not isinstance(item, dict):
            raise GraphFormatError(f"vertex entry must be an object, got {item!r}")
        unknown = set(item) - _VERTEX
        if unknown:
            raise GraphFormatError(f"unknown vertex fields: {sorted(unknown)}")
        if not isinstance(item.get("id"), str):
            raise GraphFormatError(f"vertex id must be a string: {item!r}")
        b = item.get("boundary", False)
        if not isinstance(b, bool):
            raise GraphFormatError(f"boundary flag must be true/false: {item!r}")
        verts.append((item["id"], _number(item.get("measure", 1.0), "measure"), b))
    edges = []
    for item in obj.get("edges", []):
        if not isinstance(item, dict):
            raise GraphFormatError(f"edge entry must be an object, got {item!r}")
        unknown = set(item) - _EDGE
        if unknown:
            raise GraphFormatError(f"unknown edge fields: {sorted(unknown)}")
        if not isinstance(item.get("u"), str) or not isinstance(item.get("v"), str):
            raise GraphFormatError(f"edge endpoints must be strings: {item!r}")
        edges.append((item["u"], item["v"], _number(item.get("weight", 1.0), "weight")))
    return build_graph(verts, edges)


def graph_to_json(g: Graph) -> dict:
    return {
        "vertices": [
            {"id": v, "measure": m, "boundary": v in g.boundary} for v, m in zip(g.vertices, g.measures)
        ],
        "edges": [{"u": u, "v": v, "weight": w} for (u, v), w in zip(g.edges, g.weights)],
    }


def load_graph(path) -> Graph:
    if str(path) == "-":
        return graph_from_json(json.load(sys.stdin))
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"{path}: invalid JSON ({exc})") from None
    return graph_from_json(obj)


def _float(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"+inf"' if x > 0 else '"-inf"'
    return format(x, ".17g")


def dumps(obj, indent: int | None = None) -> str:
    """JSON text with floats at 17 significant digits."""

    def enc(o, level):
        if o is None or isinstance(o, (bool, np.bool_)):
            return json.dumps(None if o is None else bool(o))
        if isinstance(o, (int, np.integer)):
            return str(int(o))
        if isinstance(o, (float, np.floating)):
            return _float(float(o))
        if isinstance(o, str):
            return json.dumps(o)
        if isinstance(o, np.ndarray):
            o = o.tolist()
        if isinstance(o, (set, frozenset)):
            o = sorted(o)
        if isinstance(o, dict):
            items = [f"{json.dumps(str(k))}: {enc(v, level + 1)}" for k, v in o.items()]
            return _wrap("{", "}", items, level)
        if isinstance(o, (list, tuple)):
            return _wrap("[", "]", [enc(v, level + 1) for v in o], level)
        raise TypeError(f"cannot serialize {type(o).__name__}")

    def _wrap(open_, close, items, level):
        if not items:
            return open_ + close
        if indent is None:
            return open_ + ", ".join(items) + close
        pad = "\n" + " " * (indent * (level + 1))
        return open_ + pad + ("," + pad).join(items) + "\n" + " " * (indent * level) + close

    return enc(obj, 0)


def write_json(obj, path, indent: int | None = 2) -> None:
    text = dumps(obj, indent) + "\n"
    if str(path) == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def save_graph(g: Graph, path) -> None:
    write_json(graph_to_json(g), path)
