"""Seeded random map/query generation for property tests and the CLI --seed flag.

Obstacles are star-shaped polygons (simple by construction), rejection-
sampled until pairwise disjoint and in bounds.  Everything is driven by a
single random.Random stream, so a seed pins the whole instance.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .polymap import PolygonMap, polygons_overlap
from .primitives import Point2, Polygon, Rect


@dataclass
class RandomInstance:
    map: PolygonMap
    start: Point2
    target: Point2
    seed: int


def random_star_polygon(rng: random.Random, cx: float, cy: float,
                        rmin: float, rmax: float, pid: str) -> Polygon | None:
    n = rng.randint(3, 10)
    angles = sorted(rng.uniform(0.0, 2.0 * math.pi) for _ in range(n))
    for i in range(1, n):
        if angles[i] - angles[i - 1] < 0.05:
            return None
    if 2.0 * math.pi - (angles[-1] - angles[0]) < 0.05:
        return None
    pts = []
    for a in angles:
        r = rng.uniform(rmin, rmax)
        pts.append(Point2(cx + r * math.cos(a), cy + r * math.sin(a)))
    try:
        return Polygon(pts, pid)
    except ValueError:
        return None


def generate_instance(seed: int,
                      bounds: Rect = Rect(0.0, 0.0, 20.0, 20.0),
                      min_polygons: int = 5,
                      max_polygons: int = 30) -> RandomInstance:
    rng = random.Random(seed)
    want = rng.randint(min_polygons, max_polygons)
    polys: list[Polygon] = []
    margin = 0.2
    attempts = 0
    while len(polys) < want and attempts < 400:
        attempts += 1
        rmax = rng.uniform(0.6, 1.6)
        rmin = rmax * rng.uniform(0.35, 0.8)
        cx = rng.uniform(bounds.xmin + rmax + margin, bounds.xmax - rmax - margin)
        cy = rng.uniform(bounds.ymin + rmax + margin, bounds.ymax - rmax - margin)
        p = random_star_polygon(rng, cx, cy, rmin, rmax, f"p{len(polys)}")
        if p is None:
            continue
        if any(polygons_overlap(p, q) for q in polys):
            continue
        polys.append(p)
    pmap = PolygonMap(polys, bounds)

    def free_point() -> Point2:
        while True:
            q = Point2(rng.uniform(bounds.xmin + margin, bounds.xmax - margin),
                       rng.uniform(bounds.ymin + margin, bounds.ymax - margin))
            if pmap.polygon_at(q) is None and _clear_of_boundaries(pmap, q):
                return q

    s = free_point()
    while True:
        t = free_point()
        if t.distance_to(s) > 1.0:
            break
    return RandomInstance(pmap, s, t, seed)


def _clear_of_boundaries(pmap: PolygonMap, q: Point2, tol: float = 1e-6) -> bool:
    """Keep query points out of the boundary tolerance band."""
    from ._pure import _pt_seg_dist2

    for p in pmap.polygons.values():
        x0, y0, x1, y1 = p.bbox
        if not (x0 - tol <= q.x <= x1 + tol and y0 - tol <= q.y <= y1 + tol):
            continue
        vs = p.vertices
        for i in range(len(vs)):
            a, b = vs[i], vs[(i + 1) % len(vs)]
            if _pt_seg_dist2(q.x, q.y, a.x, a.y, b.x, b.y) < tol * tol:
                return False
    return True
