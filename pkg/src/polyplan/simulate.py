"""Replanning loop: track the global path, watch the map, replan when needed.

Per tick: apply due map events; replan from the robot's current position if
the map version changed since the last plan or the remaining path collides;
then advance the robot one pure-pursuit step.  Runs end on goal, failure
(no path / robot swallowed by an appearing obstacle) or timeout.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Optional

from .polymap import MapEvent, PolygonMap, apply_event, path_collides
from .primitives import Path, Point2
from .pursuit import (
    PursuitConfig,
    RobotState,
    lookahead_point,
    point_at_arc,
    project_on_path,
    pursuit_command,
    step_kinematics,
    wrap_angle,
)
from .results import OK, InvalidQueryError, PlanResult

REASON_INITIAL = "initial"
REASON_MAP_CHANGE = "map-change"
REASON_COLLISION = "collision"


@dataclass(frozen=True, slots=True)
class ScenarioScript:
    events: tuple[MapEvent, ...]
    dt: float = 0.05
    timeout: float = 300.0

    def __post_init__(self) -> None:
        times = [e.time for e in self.events]
        if times != sorted(times):
            raise ValueError("script events must be sorted by time")
        if self.dt <= 0.0 or self.timeout <= 0.0:
            raise ValueError("dt and timeout must be positive")


@dataclass
class ReplanRecord:
    tick: int
    time: float
    reason: str
    status: str
    wall_seconds: float
    prep_seconds: float
    counters: dict[str, int]
    path_length: Optional[float]
    path_segments: Optional[int]


@dataclass
class TickRecord:
    tick: int
    time: float
    x: float
    y: float
    heading: float
    speed: float


@dataclass
class SimulationRun:
    planner: str
    scenario: str = ""
    ticks: list[TickRecord] = field(default_factory=list)
    replans: list[ReplanRecord] = field(default_factory=list)
    events_applied: list[tuple[int, float, str, str]] = field(default_factory=list)
    paths: list[Path] = field(default_factory=list)
    goal_time: Optional[float] = None
    failure: Optional[str] = None
    final_map: Optional[PolygonMap] = None

    @property
    def succeeded(self) -> bool:
        return self.goal_time is not None

    @property
    def plan_calls(self) -> int:
        return len(self.replans)

    def metrics(self) -> dict:
        """Deterministic metric view: no wall-clock fields."""
        return {
            "planner": self.planner,
            "scenario": self.scenario,
            "goal_time": self.goal_time,
            "failure": self.failure,
            "ticks": len(self.ticks),
            "events": [[t, tm, k, pid] for t, tm, k, pid in self.events_applied],
            "replans": [
                {
                    "tick": r.tick,
                    "time": r.time,
                    "reason": r.reason,
                    "status": r.status,
                    "length": r.path_length,
                    "segments": r.path_segments,
                    "counters": r.counters,
                }
                for r in self.replans
            ],
            "final_position": [self.ticks[-1].x, self.ticks[-1].y] if self.ticks else None,
        }


def remaining_path(path: Path, state: RobotState) -> Path:
    """Untraversed sub-path, from the robot's projection point to the end."""
    if not path.waypoints:
        raise ValueError("empty path")
    proj = project_on_path(path, state.position)
    arcs = path.arc_lengths()
    total = arcs[-1]
    if proj >= total:
        return Path([path.waypoints[-1]])
    head = point_at_arc(path, proj)
    rest = [head]
    for i, wp in enumerate(path.waypoints):
        if arcs[i] > proj:
            rest.append(wp)
    if len(rest) >= 2 and rest[0].distance_to(rest[1]) == 0.0:
        rest.pop(0)
    return Path(rest)


def _initial_heading(path: Path, s: Point2) -> float:
    for wp in path.waypoints:
        if wp.x != s.x or wp.y != s.y:
            return wrap_angle(math.atan2(wp.y - s.y, wp.x - s.x))
    return 0.0


def run_scenario(map0: PolygonMap, script: ScenarioScript, s: Point2, t: Point2,
                 planner, cfg: PursuitConfig = PursuitConfig(),
                 scenario_name: str = "") -> SimulationRun:
    run = SimulationRun(planner=planner.name, scenario=scenario_name)
    current = map0
    pending = list(script.events)
    dt = script.dt

    def do_plan(origin: Point2, tick: int, now: float, reason: str) -> Optional[PlanResult]:
        t0 = time.perf_counter()
        try:
            result = planner.plan(current, origin, t)
        except InvalidQueryError as exc:
            run.replans.append(ReplanRecord(tick, now, reason, "invalid_query",
                                            time.perf_counter() - t0, 0.0, {}, None, None))
            run.failure = f"invalid query: {exc}"
            return None
        run.replans.append(ReplanRecord(
            tick, now, reason, result.status, result.plan_seconds,
            result.prep_seconds, result.counters.as_dict(),
            result.path.length if result.found else None,
            result.path.segments if result.found else None))
        if result.status != OK:
            run.failure = f"planner returned {result.status}"
            return None
        if result.found:
            run.paths.append(result.path)
        return result

    state = RobotState(s, 0.0, 0.0)
    tick = 0
    now = 0.0
    # events scheduled at or before t=0 apply before the initial plan
    while pending and pending[0].time <= now + 1e-9:
        e = pending.pop(0)
        current = apply_event(current, e)
        run.events_applied.append((tick, e.time, e.kind, e.polygon_id))
    version_at_plan = current.version
    result = do_plan(s, 0, 0.0, REASON_INITIAL)
    if result is None:
        run.final_map = current
        return run
    active = result.path
    state = RobotState(s, _initial_heading(active, s), 0.0)
    run.ticks.append(TickRecord(0, 0.0, state.position.x, state.position.y,
                                state.heading, state.speed))

    max_ticks = int(script.timeout / dt)
    while tick < max_ticks:
        tick += 1
        now = tick * dt
        changed = False
        while pending and pending[0].time <= now + 1e-9:
            e = pending.pop(0)
            current = apply_event(current, e)
            run.events_applied.append((tick, e.time, e.kind, e.polygon_id))
            changed = True
        reason = None
        if changed or current.version != version_at_plan:
            reason = REASON_MAP_CHANGE
        else:
            rem = remaining_path(active, state)
            if len(rem.waypoints) >= 2 and path_collides(current, rem):
                reason = REASON_COLLISION
        if reason is not None:
            version_at_plan = current.version
            result = do_plan(state.position, tick, now, reason)
            if result is None:
                run.final_map = current
                return run
            active = result.path
        L = cfg.lookahead(state.speed)
        goal_pt, _ = lookahead_point(active, state, L)
        cmd = pursuit_command(state, goal_pt, cfg)
        state = step_kinematics(state, cmd, dt)
        run.ticks.append(TickRecord(tick, now, state.position.x, state.position.y,
                                    state.heading, state.speed))
        if state.position.distance_to(t) <= cfg.goal_tolerance:
            run.goal_time = now
            break
    if run.goal_time is None and run.failure is None:
        run.failure = "timeout"
    run.final_map = current
    return run


@dataclass
class RunComparison:
    scenario: str
    planners: list[str]
    replan_walls: dict[str, list[float]]       # per plan call, search only
    replan_preps: dict[str, list[float]]       # rasterization where applicable
    total_plan_time: dict[str, float]
    path_lengths: dict[str, list[float]]
    path_segments: dict[str, list[int]]
    goal_times: dict[str, Optional[float]]
    intersection_tests: dict[str, int]
    replan_ratio: dict[tuple[str, str], float]
    goal_ratio: dict[tuple[str, str], float]


def compare_runs(runs: list[SimulationRun]) -> RunComparison:
    """Per-run and pairwise-ratio metrics for runs of one scenario."""
    if len(runs) < 2:
        raise ValueError("need at least two runs to compare")
    names = [r.scenario for r in runs]
    if len(set(names)) != 1:
        raise ValueError(f"mismatched scenarios: {sorted(set(names))}")
    planners = [r.planner for r in runs]
    walls = {r.planner: [p.wall_seconds for p in r.replans] for r in runs}
    preps = {r.planner: [p.prep_seconds for p in r.replans] for r in runs}
    lengths = {r.planner: [p.path_length for p in r.replans if p.path_length is not None]
               for r in runs}
    segs = {r.planner: [p.path_segments for p in r.replans if p.path_segments is not None]
            for r in runs}
    goals = {r.planner: r.goal_time for r in runs}
    tests = {r.planner: sum(p.counters.get("intersection_tests", 0) for p in r.replans)
             for r in runs}
    replan_ratio = {}
    goal_ratio = {}
    for i in range(len(runs)):
        for j in range(len(runs)):
            if i == j:
                continue
            a, b = runs[i].planner, runs[j].planner
            ma = _median(walls[a])
            mb = _median(walls[b])
            replan_ratio[(a, b)] = mb / ma if ma > 0 else math.inf
            ga, gb = goals[a], goals[b]
            goal_ratio[(a, b)] = (gb / ga) if (ga and gb) else math.nan
    return RunComparison(names[0], planners, walls, preps,
                         {k: sum(v) for k, v in walls.items()},
                         lengths, segs, goals, tests, replan_ratio, goal_ratio)


def _median(xs: list[float]) -> float:
    if not xs:
        return 0.0
    ys = sorted(xs)
    n = len(ys)
    mid = n // 2
    return ys[mid] if n % 2 else 0.5 * (ys[mid - 1] + ys[mid])
