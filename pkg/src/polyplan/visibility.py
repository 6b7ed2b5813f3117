"""Full visibility-graph construction and A* over it.

The eager counterpart of the lazy planner: enumerate every vertex pair,
keep tangential pairs that no polygon blocks, then search.  Quadratic in
vertices and the correctness oracle for the lazy planner's output.
"""

from __future__ import annotations

import math
import time
from heapq import heappop, heappush

from . import backend
from .minimal_construct import (
    ORIGIN_CORNER,
    ORIGIN_START,
    ORIGIN_TARGET,
    SearchGraph,
    _edge_allowed,
)
from .polymap import PolygonMap
from .primitives import Path, Point2
from .results import NO_PATH, OK, InvalidQueryError, PlanResult


def build_full_visibility_graph(pmap: PolygonMap, s: Point2, t: Point2) -> SearchGraph:
    """Graph over all convex polygon corners plus s and t; an edge exists iff
    it is tangential at each polygon-corner endpoint and no polygon blocks it."""
    graph = SearchGraph()
    vs = graph.new_vertex(s.x, s.y, ORIGIN_START)
    vt = graph.new_vertex(t.x, t.y, ORIGIN_TARGET)
    vs.h = math.dist((s.x, s.y), (t.x, t.y))
    vt.h = 0.0
    for p in pmap.polygons.values():
        n = len(p.vertices)
        for i in p.convex_indices:
            c = p.vertices[i]
            v = graph.new_vertex(c.x, c.y, ORIGIN_CORNER, p.id, i)
            prv, nxt = p.vertices[(i - 1) % n], p.vertices[(i + 1) % n]
            v.prev_x, v.prev_y = prv.x, prv.y
            v.next_x, v.next_y = nxt.x, nxt.y
            v.h = math.dist((c.x, c.y), (t.x, t.y))
    if pmap.polygons:
        offsets, coords, bboxes, epses, _ = pmap.arrays()
    else:
        offsets = None
    verts = graph.vertices
    for i in range(len(verts)):
        u = verts[i]
        for j in range(i + 1, len(verts)):
            v = verts[j]
            if not _edge_allowed(u, v):
                continue
            if offsets is not None:
                graph.counters.intersection_tests += 1
                if backend.any_hit(u.x, u.y, v.x, v.y, offsets, coords, bboxes, epses):
                    continue
            graph.add_edge(u, v)
    return graph


def oracle_shortest_path(pmap: PolygonMap, s: Point2, t: Point2,
                         graph: SearchGraph | None = None) -> PlanResult:
    """A* over the full visibility graph; same contract as the lazy planner.

    Keeps its own g/parent bookkeeping so it shares nothing with the lazy
    search machinery beyond the geometry kernels.
    """
    t0 = time.perf_counter()
    inside = pmap.polygon_at(s)
    if inside is not None:
        raise InvalidQueryError(f"start {tuple(s)} inside polygon {inside!r}")
    inside = pmap.polygon_at(t)
    if inside is not None:
        raise InvalidQueryError(f"target {tuple(t)} inside polygon {inside!r}")
    if graph is None:
        graph = build_full_visibility_graph(pmap, s, t)
    vs, vt = graph.vertices[0], graph.vertices[1]
    if vs.x == vt.x and vs.y == vt.y:
        return PlanResult(OK, Path([s]), graph, graph.counters,
                          time.perf_counter() - t0)
    g = {vs.serial: 0.0}
    parent: dict[int, int] = {}
    closed: set[int] = set()
    heap = [(vs.h, 0, vs.serial)]
    order = 0
    while heap:
        _, _, cur = heappop(heap)
        if cur in closed:
            continue
        closed.add(cur)
        if cur == vt.serial:
            chain = [cur]
            while chain[-1] in parent:
                chain.append(parent[chain[-1]])
            chain.reverse()
            pts = [Point2(graph.vertices[k].x, graph.vertices[k].y) for k in chain]
            return PlanResult(OK, Path(pts), graph, graph.counters,
                              time.perf_counter() - t0)
        u = graph.vertices[cur]
        for v in u.adj:
            if v.serial in closed:
                continue
            ng = g[cur] + math.dist((u.x, u.y), (v.x, v.y))
            if ng < g.get(v.serial, math.inf):
                g[v.serial] = ng
                parent[v.serial] = cur
                order += 1
                heappush(heap, (ng + v.h, order, v.serial))
    return PlanResult(NO_PATH, None, graph, graph.counters, time.perf_counter() - t0)
