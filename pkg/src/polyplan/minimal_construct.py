"""Lazy visibility-graph A*.

The search starts from the two-vertex graph {start, target} joined by one
optimistic edge.  Collision tests are deferred: only when a vertex is popped
is its parent edge tested against the obstacle set.  A failed test removes
the edge, re-parents the vertex from its closed neighbors, and connects the
blocking polygon's convex corners into the graph with tangential edges --
again without any collision test.  Edges that can never carry a shortest
path (non-tangential at a polygon corner, or incident to a concave corner)
are never created.
"""

from __future__ import annotations

import math
import time
from heapq import heappop, heappush
from typing import Optional

from . import backend
from .polymap import PolygonMap
from .primitives import Path, Point2, Polygon
from .results import NO_PATH, OK, Counters, InvalidQueryError, PlanResult

UNTOUCHED = 0
OPEN = 1
CLOSED = 2

ORIGIN_START = "start"
ORIGIN_TARGET = "target"
ORIGIN_CORNER = "corner"


class SearchVertex:
    __slots__ = ("x", "y", "origin", "polygon_id", "corner_index",
                 "prev_x", "prev_y", "next_x", "next_y",
                 "g", "h", "f", "parent", "state", "adj", "serial", "stamp")

    def __init__(self, x: float, y: float, origin: str, serial: int,
                 polygon_id: str = "", corner_index: int = -1):
        self.x = x
        self.y = y
        self.origin = origin
        self.polygon_id = polygon_id
        self.corner_index = corner_index
        # ring neighbors, set for polygon corners (tangency tests)
        self.prev_x = self.prev_y = self.next_x = self.next_y = 0.0
        self.g = math.inf
        self.h = 0.0
        self.f = math.inf
        self.parent: Optional[SearchVertex] = None
        self.state = UNTOUCHED
        self.adj: dict[SearchVertex, None] = {}
        self.serial = serial
        self.stamp = 0

    @property
    def position(self) -> Point2:
        return Point2(self.x, self.y)

    def __repr__(self) -> str:
        return f"SearchVertex(({self.x}, {self.y}), {self.origin}, g={self.g:.4f})"


class SearchGraph:
    """The lazily discovered graph plus the search queue and counters."""

    def __init__(self) -> None:
        self.vertices: list[SearchVertex] = []
        self.counters = Counters()
        self.closed_polygons: set[str] = set()
        self._heap: list[tuple[float, float, int, int, SearchVertex]] = []
        self._push_order = 0

    def new_vertex(self, x: float, y: float, origin: str,
                   polygon_id: str = "", corner_index: int = -1) -> SearchVertex:
        v = SearchVertex(x, y, origin, len(self.vertices), polygon_id, corner_index)
        self.vertices.append(v)
        return v

    def add_edge(self, u: SearchVertex, v: SearchVertex) -> None:
        if v not in u.adj:
            u.adj[v] = None
            v.adj[u] = None
            self.counters.edges_added += 1

    def remove_edge(self, u: SearchVertex, v: SearchVertex) -> None:
        if v in u.adj:
            del u.adj[v]
            del v.adj[u]
            self.counters.edges_removed += 1

    def push(self, v: SearchVertex) -> None:
        v.state = OPEN
        v.stamp += 1
        self._push_order += 1
        # min-f, ties to larger g, then stable insertion order
        heappush(self._heap, (v.f, -v.g, self._push_order, v.stamp, v))

    def pop(self) -> Optional[SearchVertex]:
        while self._heap:
            _, _, _, stamp, v = heappop(self._heap)
            if v.state == OPEN and stamp == v.stamp:
                self.counters.queue_pops += 1
                return v
        return None

    @property
    def edge_count(self) -> int:
        return sum(len(v.adj) for v in self.vertices) // 2

    def edges(self):
        """Each undirected edge once, in deterministic discovery order."""
        for v in self.vertices:
            for w in v.adj:
                if v.serial < w.serial:
                    yield v, w


def _dist(u: SearchVertex, v: SearchVertex) -> float:
    return math.dist((u.x, u.y), (v.x, v.y))


def find_parent(v: SearchVertex, graph: SearchGraph) -> None:
    """Re-parent v from its best closed neighbor and requeue it; if none
    exists, v stays parentless until a later expansion reaches it."""
    graph.counters.reparent_calls += 1
    best: Optional[SearchVertex] = None
    best_cost = math.inf
    for vi in v.adj:
        if vi.state == CLOSED:
            c = vi.g + _dist(vi, v)
            if c < best_cost:
                best_cost = c
                best = vi
    if best is not None:
        v.parent = best
        v.g = best_cost
        v.f = v.g + v.h
        graph.push(v)


def _edge_allowed(u: SearchVertex, v: SearchVertex) -> bool:
    """Tangency filter: a candidate edge must be tangential at each endpoint
    that is a polygon corner (free endpoints are unconstrained)."""
    if u.x == v.x and u.y == v.y:
        return False
    if u.origin == ORIGIN_CORNER:
        if not backend.is_tangential(v.x, v.y, u.x, u.y,
                                     u.prev_x, u.prev_y, u.next_x, u.next_y):
            return False
    if v.origin == ORIGIN_CORNER:
        if not backend.is_tangential(u.x, u.y, v.x, v.y,
                                     v.prev_x, v.prev_y, v.next_x, v.next_y):
            return False
    return True


def connect_obstacle(p: Polygon, graph: SearchGraph, target: SearchVertex) -> None:
    """Add the polygon's convex corners and all tangential edges to existing
    vertices; no collision tests here (edges are validated lazily on pop)."""
    n = len(p.vertices)
    for i in p.convex_indices:
        c = p.vertices[i]
        existing = list(graph.vertices)
        v = graph.new_vertex(c.x, c.y, ORIGIN_CORNER, p.id, i)
        prv, nxt = p.vertices[(i - 1) % n], p.vertices[(i + 1) % n]
        v.prev_x, v.prev_y = prv.x, prv.y
        v.next_x, v.next_y = nxt.x, nxt.y
        v.h = math.dist((v.x, v.y), (target.x, target.y))
        for w in existing:
            if _edge_allowed(v, w):
                graph.add_edge(v, w)
        find_parent(v, graph)


def extract_path(t: SearchVertex) -> Path:
    chain = []
    v: Optional[SearchVertex] = t
    while v is not None:
        chain.append(Point2(v.x, v.y))
        nxt = v.parent
        if nxt is None and v.origin != ORIGIN_START:
            raise RuntimeError("broken parent chain during path extraction")
        v = nxt
    chain.reverse()
    return Path(chain)


def plan(pmap: PolygonMap, s: Point2, t: Point2) -> PlanResult:
    """Shortest obstacle-avoiding path from s to t, or NO_PATH.

    Raises InvalidQueryError when s or t lies strictly inside an obstacle.
    """
    t0 = time.perf_counter()
    inside = pmap.polygon_at(s)
    if inside is not None:
        raise InvalidQueryError(f"start {tuple(s)} inside polygon {inside!r}")
    inside = pmap.polygon_at(t)
    if inside is not None:
        raise InvalidQueryError(f"target {tuple(t)} inside polygon {inside!r}")

    graph = SearchGraph()
    ctr = graph.counters
    vs = graph.new_vertex(s.x, s.y, ORIGIN_START)
    vt = graph.new_vertex(t.x, t.y, ORIGIN_TARGET)
    vs.g = 0.0
    vs.h = math.dist((s.x, s.y), (t.x, t.y))
    vs.f = vs.h
    vs.state = CLOSED
    vt.h = 0.0
    if vs.x == vt.x and vs.y == vt.y:
        # degenerate query: already there
        return PlanResult(OK, Path([s]), graph, ctr, time.perf_counter() - t0)
    graph.add_edge(vs, vt)
    vt.parent = vs
    vt.g = vs.h
    vt.f = vt.g
    graph.push(vt)

    if pmap.polygons:
        offsets, coords, bboxes, epses, _ = pmap.arrays()
    else:
        offsets = coords = bboxes = epses = None
    poly_list = list(pmap.polygons.values())
    validated: set[tuple[int, int]] = set()

    while True:
        v = graph.pop()
        if v is None:
            return PlanResult(NO_PATH, None, graph, ctr, time.perf_counter() - t0)
        u = v.parent
        assert u is not None, "queued vertex lost its parent"
        v.state = UNTOUCHED  # off the queue; closed below only if its edge holds
        key = (u.serial, v.serial) if u.serial < v.serial else (v.serial, u.serial)
        if key in validated:
            hit = -1
        elif offsets is None:
            ctr.intersection_tests += 1
            hit = -1
        else:
            ctr.intersection_tests += 1
            hit = backend.first_hit(u.x, u.y, v.x, v.y, offsets, coords, bboxes, epses)
        if hit < 0:
            validated.add(key)
            if v is vt:
                path = extract_path(v)
                return PlanResult(OK, path, graph, ctr, time.perf_counter() - t0)
            v.state = CLOSED
            ctr.vertices_expanded += 1
            for vi in v.adj:
                if vi.state == CLOSED:
                    continue
                ng = v.g + _dist(v, vi)
                if vi.state != OPEN or ng < vi.g:
                    vi.parent = v
                    vi.g = ng
                    vi.f = ng + vi.h
                    graph.push(vi)
        else:
            p = poly_list[hit]
            graph.remove_edge(u, v)
            v.parent = None
            find_parent(v, graph)
            if p.id not in graph.closed_polygons:
                connect_obstacle(p, graph, vt)
                graph.closed_polygons.add(p.id)
