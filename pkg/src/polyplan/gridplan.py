"""Grid-rasterized A* baseline.

Conservative rasterization: any cell whose center or corners are interior,
or whose rectangle touches a polygon edge, is blocked.  Grid paths are
therefore always collision-free in the continuous map and never shorter
than the true shortest path.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

from . import backend
from .polymap import PolygonMap
from .primitives import Path, Point2
from .results import NO_PATH, OK, START_OR_GOAL_OCCUPIED, Counters, PlanResult

DEFAULT_CELLS_PER_EXTENT = 200


@dataclass
class GridMap:
    origin: Point2
    resolution: float
    width: int
    height: int
    occupancy: bytearray  # row-major, 1 = blocked

    def cell_of(self, p: Point2) -> tuple[int, int]:
        ix = int((p.x - self.origin.x) / self.resolution)
        iy = int((p.y - self.origin.y) / self.resolution)
        ix = 0 if ix < 0 else (self.width - 1 if ix >= self.width else ix)
        iy = 0 if iy < 0 else (self.height - 1 if iy >= self.height else iy)
        return ix, iy

    def cell_center(self, ix: int, iy: int) -> Point2:
        return Point2(self.origin.x + (ix + 0.5) * self.resolution,
                      self.origin.y + (iy + 0.5) * self.resolution)

    def is_occupied(self, ix: int, iy: int) -> bool:
        return bool(self.occupancy[iy * self.width + ix])

    @property
    def occupied_count(self) -> int:
        return sum(self.occupancy)


def default_resolution(pmap: PolygonMap) -> float:
    return pmap.bounds.extent / DEFAULT_CELLS_PER_EXTENT


def rasterize(pmap: PolygonMap, resolution: float) -> GridMap:
    if resolution <= 0:
        raise ValueError(f"resolution must be positive, got {resolution}")
    b = pmap.bounds
    width = max(1, math.ceil(b.width / resolution))
    height = max(1, math.ceil(b.height / resolution))
    occ = bytearray(width * height)
    for p in pmap.polygons.values():
        backend.rasterize_polygon(occ, width, height, b.xmin, b.ymin,
                                  resolution, p.flat, p.eps_boundary)
    return GridMap(Point2(b.xmin, b.ymin), resolution, width, height, occ)


def _merge_collinear(cells: list[int], width: int) -> list[tuple[int, int]]:
    pts = [(c % width, c // width) for c in cells]
    if len(pts) <= 2:
        return pts
    out = [pts[0]]
    for i in range(1, len(pts) - 1):
        dx0 = pts[i][0] - out[-1][0]
        dy0 = pts[i][1] - out[-1][1]
        dx1 = pts[i + 1][0] - pts[i][0]
        dy1 = pts[i + 1][1] - pts[i][1]
        if dx0 * dy1 != dy0 * dx1:
            out.append(pts[i])
    out.append(pts[-1])
    return out


def grid_astar(grid: GridMap, s: Point2, t: Point2) -> PlanResult:
    """8-connected A* with the octile heuristic and no corner cutting.

    Returns the path as cell-center waypoints with collinear runs merged.
    """
    t0 = time.perf_counter()
    ctr = Counters()
    sx, sy = grid.cell_of(s)
    gx, gy = grid.cell_of(t)
    if grid.is_occupied(sx, sy) or grid.is_occupied(gx, gy):
        return PlanResult(START_OR_GOAL_OCCUPIED, None, None, ctr,
                          time.perf_counter() - t0)
    cells = backend.grid_astar(grid.occupancy, grid.width, grid.height,
                               sx, sy, gx, gy)
    if cells is None:
        return PlanResult(NO_PATH, None, None, ctr, time.perf_counter() - t0)
    merged = _merge_collinear(cells, grid.width)
    path = Path([grid.cell_center(ix, iy) for ix, iy in merged])
    return PlanResult(OK, path, None, ctr, time.perf_counter() - t0)


def plan_on_grid(pmap: PolygonMap, s: Point2, t: Point2,
                 resolution: float | None = None) -> PlanResult:
    """Rasterize then search; rasterization time is reported separately."""
    if resolution is None:
        resolution = default_resolution(pmap)
    t0 = time.perf_counter()
    grid = rasterize(pmap, resolution)
    prep = time.perf_counter() - t0
    result = grid_astar(grid, s, t)
    result.prep_seconds = prep
    return result
