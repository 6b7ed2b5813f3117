"""Map and scenario file formats.

Both are line-oriented key/value text with coordinate lists; '#' starts a
comment, blank lines are ignored.  The exact grammar is documented in the
README.  Map geometry is inflated by the robot radius at load unless the
file carries the `inflated` flag (serialization writes inflated geometry
plus that flag, so a round trip never inflates twice).

Map file:
    bounds <xmin> <ymin> <xmax> <ymax>
    radius <r>
    inflated                       # optional flag
    polygon <id> <x> <y> <x> <y> ...

Scenario file:
    map <relative path>
    start <x> <y>
    target <x> <y>
    planner <mc|grid|oracle>       # optional
    grid_resolution <r>            # optional
    dt <seconds>                   # optional
    timeout <seconds>              # optional
    pursuit <field> <value>        # optional, repeatable
    event <time> disappear <id>
    event <time> appear <id> <x> <y> <x> <y> ...
    event <time> move <id> <dx> <dy>
"""

from __future__ import annotations

import dataclasses
import math
import os
from dataclasses import dataclass
from typing import Optional

from .inflate import inflate_polygon
from .polymap import APPEAR, DISAPPEAR, MOVE, MapEvent, PolygonMap, validate_map
from .primitives import Point2, Polygon, Rect
from .pursuit import PursuitConfig
from .simulate import ScenarioScript


class ParseError(ValueError):
    def __init__(self, path: str, line: int, col: int, msg: str):
        super().__init__(f"{path}:{line}:{col}: {msg}")
        self.path = path
        self.line = line
        self.col = col
        self.msg = msg


class MapValidationError(ValueError):
    def __init__(self, path: str, report):
        super().__init__(f"{path}: invalid map:\n{report}")
        self.report = report


@dataclass
class Scenario:
    name: str
    map_path: str
    map: PolygonMap            # inflated, validated
    raw_map: PolygonMap        # physical outlines, radius ignored
    start: Point2
    target: Point2
    script: ScenarioScript
    planner: str = "mc"
    grid_resolution: Optional[float] = None
    pursuit: PursuitConfig = PursuitConfig()
    raw_script: Optional[ScenarioScript] = None  # events with uninflated payloads


class _Lines:
    """Tokenized view of the file with (line, column) tracking for errors."""

    def __init__(self, text: str, path: str):
        self.path = path
        self.rows: list[tuple[int, list[tuple[int, str]]]] = []
        for ln, raw in enumerate(text.splitlines(), start=1):
            body = raw.split("#", 1)[0]
            toks: list[tuple[int, str]] = []
            col = 0
            for piece in body.split():
                col = body.index(piece, col)
                toks.append((col + 1, piece))
                col += len(piece)
            if toks:
                self.rows.append((ln, toks))

    def error(self, line: int, col: int, msg: str) -> ParseError:
        return ParseError(self.path, line, col, msg)


def _parse_float(lines: _Lines, line: int, tok: tuple[int, str]) -> float:
    col, text = tok
    try:
        v = float(text)
    except ValueError:
        raise lines.error(line, col, f"expected a number, got {text!r}") from None
    if not math.isfinite(v):
        raise lines.error(line, col, f"non-finite number {text!r}")
    return v


def _parse_coords(lines: _Lines, line: int, toks: list[tuple[int, str]]) -> list[Point2]:
    if len(toks) % 2 != 0:
        raise lines.error(line, toks[-1][0], "odd coordinate count")
    vals = [_parse_float(lines, line, t) for t in toks]
    return [Point2(vals[i], vals[i + 1]) for i in range(0, len(vals), 2)]


def parse_map_text(text: str, path: str = "<map>") -> tuple[PolygonMap, float, bool]:
    """Returns (raw map, radius, inflated flag); no inflation or validation."""
    lines = _Lines(text, path)
    bounds: Optional[Rect] = None
    radius = 0.0
    inflated = False
    polys: list[Polygon] = []
    ids: set[str] = set()
    for ln, toks in lines.rows:
        col0, key = toks[0]
        args = toks[1:]
        if key == "bounds":
            if len(args) != 4:
                raise lines.error(ln, col0, "bounds needs 4 numbers")
            vals = [_parse_float(lines, ln, a) for a in args]
            try:
                bounds = Rect(*vals)
            except ValueError as exc:
                raise lines.error(ln, col0, str(exc)) from None
        elif key == "radius":
            if len(args) != 1:
                raise lines.error(ln, col0, "radius needs 1 number")
            radius = _parse_float(lines, ln, args[0])
            if radius < 0:
                raise lines.error(ln, args[0][0], "radius must be non-negative")
        elif key == "inflated":
            inflated = True
        elif key == "polygon":
            if len(args) < 7:
                raise lines.error(ln, col0, "polygon needs an id and at least 3 vertices")
            pid = args[0][1]
            if pid in ids:
                raise lines.error(ln, args[0][0], f"duplicate polygon id {pid!r}")
            ids.add(pid)
            pts = _parse_coords(lines, ln, args[1:])
            try:
                polys.append(Polygon(pts, pid, validate=False))
            except ValueError as exc:
                raise lines.error(ln, col0, str(exc)) from None
        else:
            raise lines.error(ln, col0, f"unknown directive {key!r}")
    if bounds is None:
        raise lines.error(1, 1, "missing bounds")
    return PolygonMap(polys, bounds), radius, inflated


def load_map(path: str) -> PolygonMap:
    """Parse, inflate by the robot radius and validate; raises ParseError or
    MapValidationError."""
    pmap, radius, _ = load_map_full(path)
    return pmap


def load_map_full(path: str) -> tuple[PolygonMap, float, PolygonMap]:
    """Like load_map but also returns (radius, raw uninflated map)."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    raw, radius, inflated = parse_map_text(text, path)
    if inflated or radius == 0.0:
        final = raw
    else:
        final = PolygonMap([inflate_polygon(p, radius) for p in raw.polygons.values()],
                           raw.bounds)
    report = validate_map(final)
    if not report.ok:
        raise MapValidationError(path, report)
    return final, radius, raw


def serialize_map(pmap: PolygonMap, radius: float, inflated: bool = True) -> str:
    """Writes inflated geometry with the flag set, so reloading never
    re-inflates.  Floats use repr, which round-trips exactly."""
    b = pmap.bounds
    out = [f"bounds {b.xmin!r} {b.ymin!r} {b.xmax!r} {b.ymax!r}",
           f"radius {radius!r}"]
    if inflated:
        out.append("inflated")
    for p in pmap.polygons.values():
        coords = " ".join(f"{v.x!r} {v.y!r}" for v in p.vertices)
        out.append(f"polygon {p.id} {coords}")
    return "\n".join(out) + "\n"


_PURSUIT_FIELDS = {f.name: f for f in dataclasses.fields(PursuitConfig)}


def parse_scenario_text(text: str, path: str, map_loader=load_map_full) -> Scenario:
    lines = _Lines(text, path)
    map_path: Optional[str] = None
    start: Optional[Point2] = None
    target: Optional[Point2] = None
    planner = "mc"
    grid_resolution: Optional[float] = None
    dt = 0.05
    timeout = 300.0
    pursuit_kw: dict[str, float] = {}
    events: list[MapEvent] = []
    radius = 0.0
    for ln, toks in lines.rows:
        col0, key = toks[0]
        args = toks[1:]
        if key == "map":
            if len(args) != 1:
                raise lines.error(ln, col0, "map needs a path")
            map_path = args[0][1]
        elif key in ("start", "target"):
            if len(args) != 2:
                raise lines.error(ln, col0, f"{key} needs 2 numbers")
            pt = Point2(_parse_float(lines, ln, args[0]), _parse_float(lines, ln, args[1]))
            if key == "start":
                start = pt
            else:
                target = pt
        elif key == "planner":
            if len(args) != 1 or args[0][1] not in ("mc", "grid", "oracle"):
                raise lines.error(ln, col0, "planner must be mc, grid or oracle")
            planner = args[0][1]
        elif key == "grid_resolution":
            grid_resolution = _parse_float(lines, ln, args[0])
        elif key == "dt":
            dt = _parse_float(lines, ln, args[0])
        elif key == "timeout":
            timeout = _parse_float(lines, ln, args[0])
        elif key == "pursuit":
            if len(args) != 2:
                raise lines.error(ln, col0, "pursuit needs a field name and a value")
            fname = args[0][1]
            if fname not in _PURSUIT_FIELDS:
                raise lines.error(ln, args[0][0],
                                  f"unknown pursuit field {fname!r}")
            pursuit_kw[fname] = _parse_float(lines, ln, args[1])
        elif key == "event":
            if len(args) < 3:
                raise lines.error(ln, col0, "event needs: time kind id ...")
            etime = _parse_float(lines, ln, args[0])
            kind = args[1][1]
            pid = args[2][1]
            rest = args[3:]
            if kind == DISAPPEAR:
                events.append(MapEvent(DISAPPEAR, pid, etime))
            elif kind == MOVE:
                if len(rest) != 2:
                    raise lines.error(ln, col0, "move needs dx dy")
                events.append(MapEvent(MOVE, pid, etime,
                                       offset=(_parse_float(lines, ln, rest[0]),
                                               _parse_float(lines, ln, rest[1]))))
            elif kind == APPEAR:
                if len(rest) < 6:
                    raise lines.error(ln, col0, "appear needs at least 3 vertices")
                pts = _parse_coords(lines, ln, rest)
                try:
                    poly = Polygon(pts, pid)
                except ValueError as exc:
                    raise lines.error(ln, col0, str(exc)) from None
                events.append(MapEvent(APPEAR, pid, etime, polygon=poly))
            else:
                raise lines.error(ln, args[1][0], f"unknown event kind {kind!r}")
        else:
            raise lines.error(ln, col0, f"unknown directive {key!r}")
    if map_path is None:
        raise lines.error(1, 1, "missing map reference")
    if start is None or target is None:
        raise lines.error(1, 1, "missing start or target")
    full = map_path if os.path.isabs(map_path) else \
        os.path.join(os.path.dirname(os.path.abspath(path)), map_path)
    pmap, radius, raw = map_loader(full)
    events.sort(key=lambda e: e.time)
    raw_events = tuple(events)
    # appear payloads see the same configuration-space inflation as the map
    if radius > 0.0:
        events = [MapEvent(APPEAR, e.polygon_id, e.time,
                           polygon=inflate_polygon(e.polygon, radius))
                  if e.kind == APPEAR else e
                  for e in events]
    script = ScenarioScript(tuple(events), dt=dt, timeout=timeout)
    name = os.path.splitext(os.path.basename(path))[0]
    return Scenario(name, full, pmap, raw, start, target, script, planner,
                    grid_resolution, PursuitConfig(**pursuit_kw),
                    ScenarioScript(raw_events, dt=dt, timeout=timeout))


def load_scenario(path: str) -> Scenario:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return parse_scenario_text(text, path)
