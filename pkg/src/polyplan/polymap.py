"""The world model: an obstacle set with bounds, versioning and validation.

Maps are immutable snapshots; apply_event returns a new map with the version
counter bumped.  The flat kernel buffers (concatenated coordinates, offsets,
bounding boxes, tolerances) are built lazily once per snapshot.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass, field
from typing import Iterable, Optional

from . import backend
from .primitives import Path, Point2, Polygon, Rect

APPEAR = "appear"
DISAPPEAR = "disappear"
MOVE = "move"


class MapEventError(ValueError):
    """Raised when an event cannot be applied to the current map."""


@dataclass(frozen=True, slots=True)
class MapEvent:
    kind: str
    polygon_id: str
    time: float
    polygon: Optional[Polygon] = None          # appear payload
    offset: Optional[tuple[float, float]] = None  # move payload

    def __post_init__(self) -> None:
        if self.kind not in (APPEAR, DISAPPEAR, MOVE):
            raise ValueError(f"unknown event kind {self.kind!r}")
        if self.kind == APPEAR and self.polygon is None:
            raise ValueError("appear event needs a polygon payload")
        if self.kind == MOVE and self.offset is None:
            raise ValueError("move event needs a displacement")

    def inverse(self) -> "MapEvent":
        if self.kind == APPEAR:
            return MapEvent(DISAPPEAR, self.polygon_id, self.time)
        if self.kind == MOVE:
            dx, dy = self.offset  # type: ignore[misc]
            return MapEvent(MOVE, self.polygon_id, self.time, offset=(-dx, -dy))
        raise ValueError("disappear events are invertible only with the removed polygon")


@dataclass(frozen=True, slots=True)
class Violation:
    kind: str
    ids: tuple[str, ...]
    detail: str

    def __str__(self) -> str:
        return f"{self.kind}[{','.join(self.ids)}]: {self.detail}"


@dataclass
class MapReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "\n".join(str(v) for v in self.violations)


class PolygonMap:
    __slots__ = ("polygons", "bounds", "version", "_arrays")

    def __init__(self, polygons: Iterable[Polygon], bounds: Rect, version: int = 0):
        self.polygons: dict[str, Polygon] = {}
        for p in polygons:
            if p.id in self.polygons:
                raise ValueError(f"duplicate polygon id {p.id!r}")
            self.polygons[p.id] = p
        self.bounds = bounds
        self.version = version
        self._arrays = None

    def __repr__(self) -> str:
        return f"PolygonMap({len(self.polygons)} polygons, v{self.version})"

    def arrays(self):
        """Flat kernel buffers: (offsets, coords, bboxes, epses, ids)."""
        if self._arrays is None:
            offsets = array("q", [0])
            coords = array("d")
            bboxes = array("d")
            epses = array("d")
            ids = []
            for p in self.polygons.values():
                coords.extend(p.flat)
                offsets.append(len(coords))
                bboxes.extend(p.bbox)
                epses.append(p.eps_boundary)
                ids.append(p.id)
            self._arrays = (offsets, coords, bboxes, epses, ids)
        return self._arrays

    def polygon_at(self, q: Point2) -> Optional[str]:
        """Id of the polygon whose interior strictly contains q, or None."""
        if not self.polygons:
            return None
        offsets, coords, bboxes, epses, ids = self.arrays()
        k = backend.point_in_any(q.x, q.y, offsets, coords, bboxes, epses)
        return None if k < 0 else ids[k]

    def with_polygons(self, polygons: Iterable[Polygon], version: int) -> "PolygonMap":
        return PolygonMap(polygons, self.bounds, version)


def _collinear_overlap(a: Point2, b: Point2, c: Point2, d: Point2) -> bool:
    """True if segments ab and cd share a collinear run longer than a point."""
    ux, uy = b.x - a.x, b.y - a.y
    uu = ux * ux + uy * uy
    if uu == 0.0:
        return False
    scale = uu ** 0.5
    tol = 1e-9 * scale

    def off_line(p: Point2) -> float:
        return abs(ux * (p.y - a.y) - uy * (p.x - a.x)) / scale

    if off_line(c) > tol or off_line(d) > tol:
        return False
    tc = ((c.x - a.x) * ux + (c.y - a.y) * uy) / uu
    td = ((d.x - a.x) * ux + (d.y - a.y) * uy) / uu
    lo, hi = min(tc, td), max(tc, td)
    return min(hi, 1.0) - max(lo, 0.0) > 1e-9


def polygons_overlap(a: Polygon, b: Polygon) -> bool:
    """True if the interiors intersect or the boundaries share a run.

    Touching at isolated points is allowed.
    """
    ax0, ay0, ax1, ay1 = a.bbox
    bx0, by0, bx1, by1 = b.bbox
    if ax1 < bx0 or bx1 < ax0 or ay1 < by0 or by1 < ay0:
        return False
    for v in a.vertices:
        if backend.point_in_polygon(v.x, v.y, b.flat, b.eps_boundary):
            return True
    for v in b.vertices:
        if backend.point_in_polygon(v.x, v.y, a.flat, a.eps_boundary):
            return True
    na = len(a.vertices)
    for i in range(na):
        p, q = a.vertices[i], a.vertices[(i + 1) % na]
        if backend.line_intersects_polygon(p.x, p.y, q.x, q.y, b.flat, b.eps_boundary):
            return True
    nb = len(b.vertices)
    for i in range(na):
        p, q = a.vertices[i], a.vertices[(i + 1) % na]
        for j in range(nb):
            r, s = b.vertices[j], b.vertices[(j + 1) % nb]
            if _collinear_overlap(p, q, r, s):
                return True
    return False


def validate_map(m: PolygonMap) -> MapReport:
    """Report self-intersecting polygons, out-of-bounds vertices and pairwise
    interior overlaps.  Violations are data, not exceptions."""
    report = MapReport()
    polys = list(m.polygons.values())
    for p in polys:
        if not Polygon.is_simple(p.vertices):
            report.violations.append(
                Violation("self-intersection", (p.id,), "outline crosses itself"))
        for v in p.vertices:
            if not m.bounds.contains(v):
                report.violations.append(
                    Violation("out-of-bounds", (p.id,),
                              f"vertex ({v.x}, {v.y}) outside {m.bounds}"))
                break
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            if polygons_overlap(polys[i], polys[j]):
                report.violations.append(
                    Violation("overlap", (polys[i].id, polys[j].id),
                              "polygon interiors intersect"))
    return report


def apply_event(m: PolygonMap, e: MapEvent) -> PolygonMap:
    """Apply one event atomically; raises MapEventError and leaves m unchanged
    when the event is inconsistent or the post-state fails validation."""
    polys = dict(m.polygons)
    if e.kind == APPEAR:
        if e.polygon_id in polys:
            raise MapEventError(f"appear: id {e.polygon_id!r} already present")
        payload = e.polygon
        assert payload is not None
        if payload.id != e.polygon_id:
            payload = Polygon(payload.vertices, e.polygon_id, validate=False)
        polys[e.polygon_id] = payload
    elif e.kind == DISAPPEAR:
        if e.polygon_id not in polys:
            raise MapEventError(f"disappear: unknown id {e.polygon_id!r}")
        del polys[e.polygon_id]
    else:  # MOVE
        if e.polygon_id not in polys:
            raise MapEventError(f"move: unknown id {e.polygon_id!r}")
        dx, dy = e.offset  # type: ignore[misc]
        polys[e.polygon_id] = polys[e.polygon_id].translated(dx, dy)
    out = m.with_polygons(polys.values(), m.version + 1)
    report = validate_map(out)
    if not report.ok:
        raise MapEventError(f"event rejected: {report}")
    return out


def path_collides(m: PolygonMap, path: Path) -> bool:
    """True iff some path segment enters some polygon interior."""
    if len(path.waypoints) < 2:
        raise ValueError("path needs at least 2 waypoints")
    if not m.polygons:
        return False
    offsets, coords, bboxes, epses, _ = m.arrays()
    pts = path.waypoints
    for i in range(len(pts) - 1):
        a, b = pts[i], pts[i + 1]
        if a.x == b.x and a.y == b.y:
            continue
        if backend.any_hit(a.x, a.y, b.x, b.y, offsets, coords, bboxes, epses):
            return True
    return False
