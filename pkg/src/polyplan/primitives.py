"""Basic geometric value types: points, segments, polygons, paths."""

from __future__ import annotations

import math
from array import array
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


@dataclass(frozen=True, slots=True)
class Point2:
    x: float
    y: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite coordinates: ({self.x}, {self.y})")

    def __iter__(self) -> Iterator[float]:
        yield self.x
        yield self.y

    def distance_to(self, other: "Point2") -> float:
        return math.dist((self.x, self.y), (other.x, other.y))


@dataclass(frozen=True, slots=True)
class Segment2:
    a: Point2
    b: Point2

    def __post_init__(self) -> None:
        if self.a.x == self.b.x and self.a.y == self.b.y:
            raise ValueError(f"degenerate segment at ({self.a.x}, {self.a.y})")

    def length(self) -> float:
        return self.a.distance_to(self.b)

    def point_at(self, t: float) -> Point2:
        return Point2(self.a.x + t * (self.b.x - self.a.x),
                      self.a.y + t * (self.b.y - self.a.y))


@dataclass(frozen=True, slots=True)
class Rect:
    xmin: float
    ymin: float
    xmax: float
    ymax: float

    def __post_init__(self) -> None:
        vals = (self.xmin, self.ymin, self.xmax, self.ymax)
        if not all(math.isfinite(v) for v in vals):
            raise ValueError(f"non-finite bounds: {vals}")
        if self.xmax <= self.xmin or self.ymax <= self.ymin:
            raise ValueError(f"empty bounds: {vals}")

    @property
    def width(self) -> float:
        return self.xmax - self.xmin

    @property
    def height(self) -> float:
        return self.ymax - self.ymin

    @property
    def extent(self) -> float:
        return max(self.width, self.height)

    def contains(self, p: Point2, tol: float = 0.0) -> bool:
        return (self.xmin - tol <= p.x <= self.xmax + tol
                and self.ymin - tol <= p.y <= self.ymax + tol)


def _signed_area2(pts: Sequence[Point2]) -> float:
    """Twice the signed area (positive for counter-clockwise rings)."""
    s = 0.0
    n = len(pts)
    for i in range(n):
        p = pts[i]
        q = pts[(i + 1) % n]
        s += p.x * q.y - q.x * p.y
    return s


def _segments_touch(a: Point2, b: Point2, c: Point2, d: Point2) -> bool:
    """Any contact between segments ab and cd (validation helper, not hot)."""

    def orient(p: Point2, q: Point2, r: Point2) -> int:
        v = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
        scale = max(abs(q.x - p.x) + abs(q.y - p.y), 1e-300) * \
            max(abs(r.x - p.x) + abs(r.y - p.y), 1e-300)
        if abs(v) <= 1e-12 * scale:
            return 0
        return 1 if v > 0 else -1

    def on_seg(p: Point2, q: Point2, r: Point2) -> bool:
        return (min(p.x, q.x) - 1e-12 <= r.x <= max(p.x, q.x) + 1e-12
                and min(p.y, q.y) - 1e-12 <= r.y <= max(p.y, q.y) + 1e-12)

    o1, o2 = orient(c, d, a), orient(c, d, b)
    o3, o4 = orient(a, b, c), orient(a, b, d)
    if o1 != o2 and o3 != o4:
        return True
    if o1 == 0 and on_seg(c, d, a):
        return True
    if o2 == 0 and on_seg(c, d, b):
        return True
    if o3 == 0 and on_seg(a, b, c):
        return True
    if o4 == 0 and on_seg(a, b, d):
        return True
    return False


class Polygon:
    """A simple polygon, normalized to counter-clockwise vertex order.

    Caches the flat coordinate buffer the kernels consume, the bounding box,
    the boundary tolerance and the convex-corner index list.
    """

    __slots__ = ("id", "vertices", "flat", "_bbox", "_eps", "_convex")

    def __init__(self, vertices: Iterable, pid: str = "", validate: bool = True):
        pts = [v if isinstance(v, Point2) else Point2(v[0], v[1]) for v in vertices]
        if len(pts) < 3:
            raise ValueError(f"polygon {pid!r}: needs at least 3 vertices")
        n = len(pts)
        for i in range(n):
            q = pts[(i + 1) % n]
            if pts[i].x == q.x and pts[i].y == q.y:
                raise ValueError(f"polygon {pid!r}: repeated consecutive vertex at index {i}")
        if _signed_area2(pts) < 0.0:
            pts.reverse()
        if validate and not Polygon.is_simple(pts):
            raise ValueError(f"polygon {pid!r}: self-intersecting outline")
        self.id = pid
        self.vertices: tuple[Point2, ...] = tuple(pts)
        flat = array("d")
        for p in pts:
            flat.append(p.x)
            flat.append(p.y)
        self.flat = flat
        self._bbox: tuple[float, float, float, float] | None = None
        self._eps: float | None = None
        self._convex: tuple[int, ...] | None = None

    def __len__(self) -> int:
        return len(self.vertices)

    def __repr__(self) -> str:
        return f"Polygon({self.id!r}, {len(self.vertices)} vertices)"

    @staticmethod
    def is_simple(pts: Sequence[Point2]) -> bool:
        n = len(pts)
        for i in range(n):
            a, b = pts[i], pts[(i + 1) % n]
            # fold-back spikes between consecutive edges
            c = pts[(i + 2) % n]
            ux, uy = b.x - a.x, b.y - a.y
            vx, vy = c.x - b.x, c.y - b.y
            if abs(ux * vy - uy * vx) <= 1e-12 * (abs(ux) + abs(uy)) * (abs(vx) + abs(vy)):
                if ux * vx + uy * vy < 0.0:
                    return False
            for j in range(i + 2, n):
                if i == 0 and j == n - 1:
                    continue  # adjacent around the wrap
                c2, d2 = pts[j], pts[(j + 1) % n]
                if _segments_touch(a, b, c2, d2):
                    return False
        return True

    @property
    def bbox(self) -> tuple[float, float, float, float]:
        if self._bbox is None:
            xs = [p.x for p in self.vertices]
            ys = [p.y for p in self.vertices]
            self._bbox = (min(xs), min(ys), max(xs), max(ys))
        return self._bbox

    @property
    def eps_boundary(self) -> float:
        """Boundary tolerance: 1e-9 of the polygon's own scale."""
        if self._eps is None:
            x0, y0, x1, y1 = self.bbox
            self._eps = 1e-9 * ((x1 - x0) + (y1 - y0))
        return self._eps

    def neighbors(self, i: int) -> tuple[Point2, Point2]:
        """The ring-adjacent vertices (previous, next) of vertex i."""
        n = len(self.vertices)
        return self.vertices[(i - 1) % n], self.vertices[(i + 1) % n]

    @property
    def convex_indices(self) -> tuple[int, ...]:
        if self._convex is None:
            from . import backend

            out = []
            n = len(self.vertices)
            for i in range(n):
                p, q, r = self.vertices[i - 1], self.vertices[i], self.vertices[(i + 1) % n]
                if backend.orientation(p.x, p.y, q.x, q.y, r.x, r.y) == 1:
                    out.append(i)
            self._convex = tuple(out)
        return self._convex

    def translated(self, dx: float, dy: float) -> "Polygon":
        return Polygon([Point2(p.x + dx, p.y + dy) for p in self.vertices],
                       self.id, validate=False)


class Path:
    """An ordered waypoint sequence with cached Euclidean length."""

    __slots__ = ("waypoints", "length", "segments")

    def __init__(self, waypoints: Iterable):
        pts = [p if isinstance(p, Point2) else Point2(p[0], p[1]) for p in waypoints]
        if not pts:
            raise ValueError("empty path")
        self.waypoints: tuple[Point2, ...] = tuple(pts)
        self.length = sum(pts[i].distance_to(pts[i + 1]) for i in range(len(pts) - 1))
        self.segments = len(pts) - 1

    def __repr__(self) -> str:
        return f"Path({self.segments} segments, length={self.length:.6f})"

    def __iter__(self) -> Iterator[Point2]:
        return iter(self.waypoints)

    def arc_lengths(self) -> list[float]:
        """Cumulative arc length at each waypoint (starts at 0)."""
        out = [0.0]
        for i in range(len(self.waypoints) - 1):
            out.append(out[-1] + self.waypoints[i].distance_to(self.waypoints[i + 1]))
        return out
