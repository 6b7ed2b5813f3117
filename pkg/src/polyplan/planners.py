"""Planner adapters with a uniform plan(map, start, target) -> PlanResult surface."""

from __future__ import annotations

from typing import Optional, Protocol

from . import gridplan, minimal_construct, visibility
from .polymap import PolygonMap
from .primitives import Point2
from .results import PlanResult

MC = "mc"
GRID = "grid"
ORACLE = "oracle"


class Planner(Protocol):
    name: str

    def plan(self, pmap: PolygonMap, s: Point2, t: Point2) -> PlanResult: ...


class MinimalConstructPlanner:
    name = MC

    def plan(self, pmap: PolygonMap, s: Point2, t: Point2) -> PlanResult:
        return minimal_construct.plan(pmap, s, t)


class GridPlanner:
    name = GRID

    def __init__(self, resolution: Optional[float] = None):
        self.resolution = resolution

    def plan(self, pmap: PolygonMap, s: Point2, t: Point2) -> PlanResult:
        return gridplan.plan_on_grid(pmap, s, t, self.resolution)


class OraclePlanner:
    name = ORACLE

    def plan(self, pmap: PolygonMap, s: Point2, t: Point2) -> PlanResult:
        return visibility.oracle_shortest_path(pmap, s, t)


def make_planner(name: str, grid_resolution: Optional[float] = None) -> Planner:
    if name == MC:
        return MinimalConstructPlanner()
    if name == GRID:
        return GridPlanner(grid_resolution)
    if name == ORACLE:
        return OraclePlanner()
    raise ValueError(f"unknown planner {name!r} (expected mc, grid or oracle)")
