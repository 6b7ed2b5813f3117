"""Shared planner result and instrumentation types."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .primitives import Path

OK = "ok"
NO_PATH = "no_path"
START_OR_GOAL_OCCUPIED = "start_or_goal_occupied"


class InvalidQueryError(ValueError):
    """Start or target lies strictly inside an obstacle."""


@dataclass
class Counters:
    intersection_tests: int = 0
    queue_pops: int = 0
    edges_added: int = 0      # gross additions (includes later-removed edges)
    edges_removed: int = 0
    vertices_expanded: int = 0
    reparent_calls: int = 0

    @property
    def edge_count(self) -> int:
        """Net discovered edges still in the graph."""
        return self.edges_added - self.edges_removed

    def as_dict(self) -> dict[str, int]:
        return {
            "intersection_tests": self.intersection_tests,
            "queue_pops": self.queue_pops,
            "edges_added": self.edges_added,
            "edges_removed": self.edges_removed,
            "edge_count": self.edge_count,
            "vertices_expanded": self.vertices_expanded,
            "reparent_calls": self.reparent_calls,
        }


@dataclass
class PlanResult:
    status: str
    path: Optional[Path] = None
    graph: Optional[object] = None       # SearchGraph, for inspection/rendering
    counters: Counters = field(default_factory=Counters)
    plan_seconds: float = 0.0            # the search itself
    prep_seconds: float = 0.0            # map processing (grid rasterization)

    @property
    def found(self) -> bool:
        return self.status == OK and self.path is not None
