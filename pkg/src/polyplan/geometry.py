"""Public 2-D geometric predicates over the primitive types.

Thin typed wrappers around the active kernel backend.  Sign convention for
orientation: LEFT (+1) / RIGHT (-1) / COLLINEAR (0), with collinearity
decided within a relative tolerance of 1e-9 of the operand scale.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Optional

from . import backend
from .primitives import Point2, Polygon, Segment2

if TYPE_CHECKING:
    from .polymap import PolygonMap

LEFT = 1
RIGHT = -1
COLLINEAR = 0


def orientation(a: Point2, b: Point2, c: Point2) -> int:
    return backend.orientation(a.x, a.y, b.x, b.y, c.x, c.y)


def is_convex_corner(p: Polygon, i: int) -> bool:
    """True for corners that bend outward; collinear corners are not convex
    (they can never be shortest-path bend points)."""
    n = len(p.vertices)
    if not 0 <= i < n:
        raise IndexError(f"vertex index {i} out of range for {p!r}")
    return i in p.convex_indices


def is_tangential(e: Segment2, p: Polygon, j: int) -> bool:
    """True if the ring neighbors of corner j lie on one side of the edge.

    The edge must end at the corner: e.b == p.vertices[j].  Collinear
    neighbors count as tangential.
    """
    n = len(p.vertices)
    if not 0 <= j < n:
        raise IndexError(f"vertex index {j} out of range for {p!r}")
    v = p.vertices[j]
    if e.b.x != v.x or e.b.y != v.y:
        raise ValueError("edge endpoint b must coincide with the polygon corner")
    prv, nxt = p.neighbors(j)
    return backend.is_tangential(e.a.x, e.a.y, e.b.x, e.b.y,
                                 prv.x, prv.y, nxt.x, nxt.y)


def point_in_polygon(q: Point2, p: Polygon, eps: Optional[float] = None) -> bool:
    """Strict interior test (even-odd rule); the boundary band counts as outside."""
    if eps is None:
        eps = p.eps_boundary
    return backend.point_in_polygon(q.x, q.y, p.flat, eps)


def segment_intersections(e: Segment2, p: Polygon) -> list[float]:
    """Sorted, deduplicated parameters t along e where it meets the outline."""
    return backend.segment_params(e.a.x, e.a.y, e.b.x, e.b.y, p.flat)


def line_intersects_polygon(e: Segment2, p: Polygon) -> bool:
    """Midpoint-subdivision intersection test.

    Splits e at its outline crossings and reports True iff some sub-segment
    midpoint is strictly interior, so grazing contact (corner touches, runs
    along an edge) does not count as intersecting.
    """
    return backend.line_intersects_polygon(e.a.x, e.a.y, e.b.x, e.b.y,
                                           p.flat, p.eps_boundary)


def first_intersected_polygon(e: Segment2, m: "PolygonMap") -> Optional[str]:
    """Id of the polygon entered earliest along e (a -> b), or None."""
    offsets, coords, bboxes, epses, ids = m.arrays()
    k = backend.first_hit(e.a.x, e.a.y, e.b.x, e.b.y, offsets, coords, bboxes, epses)
    return None if k < 0 else ids[k]
