"""Reading and writing the JSON input formats.

Rationals are strings (or JSON integers) so no binary float ever enters.

* point set: ``{"dimension": d, "points": [["p/q", ...], ...]}``
* edges: ``{"edges": [[i, j, k], ...]}`` with sorted 0-based indices
* colors: a list of point-set objects
* simplices: ``{"dimension": d, "simplices": [[["p/q", ...], ...], ...]}``
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .errors import DimensionError, ParseError
from .geometry import Point, PointSet, Simplex, parse_rational

SAMPLE = "sample"


def load_json(path) -> object:
    if str(path) == SAMPLE:
        text = resources.files("pointsel").joinpath("data/sample12.json").read_text()
    else:
        text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg})") from exc


def _rational(v, where: str):
    if isinstance(v, bool) or not isinstance(v, (str, int)):
        raise ParseError(f"{where}: coordinates must be rational strings, got {v!r}")
    try:
        return parse_rational(str(v))
    except (ParseError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"{where}: malformed rational {v!r}") from exc


def _dimension(obj, where: str) -> int:
    d = obj.get("dimension") if isinstance(obj, dict) else None
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise ParseError(f"{where}: 'dimension' must be a positive integer")
    return d


def _rows(rows, d: int, where: str) -> list[Point]:
    if not isinstance(rows, list):
        raise ParseError(f"{where}: expected a list of coordinate rows")
    pts = []
    for i, row in enumerate(rows):
        if not isinstance(row, list):
            raise ParseError(f"{where}: row {i} is not a list")
        if len(row) != d:
            raise DimensionError(f"{where}: row {i} has {len(row)} coordinates, expected {d}")
        pts.append(Point([_rational(v, f"{where}: row {i}") for v in row]))
    return pts


def pointset_from_json(obj, where: str = "input") -> PointSet:
    d = _dimension(obj, where)
    if "points" not in obj:
        raise ParseError(f"{where}: missing 'points'")
    return PointSet.of(_rows(obj["points"], d, where), d)


def parse_pointset(path) -> PointSet:
    """Parse a point-set file; genericity is scanned and recorded."""
    return pointset_from_json(load_json(path), str(path))


def parse_edges(path, n: int, d: int) -> list[tuple[int, ...]]:
    obj = load_json(path)
    if not isinstance(obj, dict) or not isinstance(obj.get("edges"), list):
        raise ParseError(f"{path}: expected an object with an 'edges' list")
    out = []
    for e in obj["edges"]:
        if not isinstance(e, list) or not all(isinstance(i, int) and not isinstance(i, bool) for i in e):
            raise ParseError(f"{path}: edge {e!r} is not a list of integers")
        if len(e) != d + 1:
            raise DimensionError(f"{path}: edge {e!r} does not have {d + 1} vertices")
        if any(a >= b for a, b in zip(e, e[1:])):
            raise ParseError(f"{path}: edge {e!r} is not strictly increasing")
        if e[0] < 0 or e[-1] >= n:
            raise ParseError(f"{path}: edge {e!r} has an index outside 0..{n - 1}")
        out.append(tuple(e))
    return out


def parse_colors(path) -> list[PointSet]:
    obj = load_json(path)
    if not isinstance(obj, list) or not obj:
        raise ParseError(f"{path}: expected a nonempty list of point sets")
    return [pointset_from_json(c, f"{path}[{i}]") for i, c in enumerate(obj)]


def parse_simplices(path) -> list[Simplex]:
    obj = load_json(path)
    d = _dimension(obj, str(path))
    if not isinstance(obj.get("simplices"), list):
        raise ParseError(f"{path}: missing 'simplices'")
    return [Simplex(_rows(s, d, f"{path}: simplex {i}"), d) for i, s in enumerate(obj["simplices"])]


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
