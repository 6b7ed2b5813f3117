"""Outward polygon offsetting with miter joins (bevel past the miter limit).

Planning treats the robot as a point, so obstacle outlines are grown by the
robot radius at load time.  Convex corners get a miter up to 2x the radius
from the original vertex, then fall back to a bevel; reflex corners take the
offset-line intersection.  The result can self-intersect for aggressive
radii; map validation reports that at load.
"""

from __future__ import annotations

import math
from typing import Sequence

from .primitives import Point2, Polygon


def offset_ring(vertices: Sequence[Point2], radius: float,
                miter_limit_factor: float = 2.0) -> list[Point2]:
    """Offset a CCW ring outward by radius; returns the new ring vertices."""
    if radius < 0.0:
        raise ValueError("radius must be non-negative")
    if radius == 0.0:
        return list(vertices)
    n = len(vertices)
    # per-edge outward normal (right of travel for a CCW ring)
    nxs: list[float] = []
    nys: list[float] = []
    for i in range(n):
        a, b = vertices[i], vertices[(i + 1) % n]
        dx, dy = b.x - a.x, b.y - a.y
        ln = math.hypot(dx, dy)
        nxs.append(dy / ln)
        nys.append(-dx / ln)
    limit = miter_limit_factor * radius
    out: list[Point2] = []
    for i in range(n):
        v = vertices[i]
        j = (i - 1) % n  # edge arriving at v
        k = i            # edge leaving v
        p1x, p1y = v.x + radius * nxs[j], v.y + radius * nys[j]
        p2x, p2y = v.x + radius * nxs[k], v.y + radius * nys[k]
        a_prev = vertices[j]
        b_next = vertices[(i + 1) % n]
        d1x, d1y = v.x - a_prev.x, v.y - a_prev.y
        d2x, d2y = b_next.x - v.x, b_next.y - v.y
        cross = d1x * d2y - d1y * d2x
        scale = math.hypot(d1x, d1y) * math.hypot(d2x, d2y)
        if abs(cross) <= 1e-12 * scale:
            # straight continuation: both offset lines coincide
            out.append(Point2(p1x, p1y))
            continue
        # intersect the two offset lines: p1 + s*d1 = p2 + u*d2
        s = ((p2x - p1x) * d2y - (p2y - p1y) * d2x) / cross
        mx = p1x + s * d1x
        my = p1y + s * d1y
        if cross > 0.0 and math.hypot(mx - v.x, my - v.y) > limit:
            # convex corner past the miter limit: bevel
            out.append(Point2(p1x, p1y))
            out.append(Point2(p2x, p2y))
        else:
            out.append(Point2(mx, my))
    # drop near-duplicate consecutive points the bevel may introduce
    cleaned: list[Point2] = []
    for p in out:
        if cleaned and math.hypot(p.x - cleaned[-1].x, p.y - cleaned[-1].y) < 1e-12:
            continue
        cleaned.append(p)
    if len(cleaned) >= 2 and math.hypot(cleaned[0].x - cleaned[-1].x,
                                        cleaned[0].y - cleaned[-1].y) < 1e-12:
        cleaned.pop()
    return cleaned


def inflate_polygon(p: Polygon, radius: float) -> Polygon:
    """Inflated copy; not validated (the loader reports bad outcomes)."""
    return Polygon(offset_ring(p.vertices, radius), p.id, validate=False)
