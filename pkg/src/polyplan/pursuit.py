"""Pure-pursuit tracking of a waypoint path with a unicycle model.

The lookahead distance scales with speed (clamped), and commanded speed
drops with commanded curvature so sharp turns are taken slowly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .primitives import Path, Point2


@dataclass(frozen=True, slots=True)
class RobotState:
    position: Point2
    heading: float  # radians, normalized to (-pi, pi]
    speed: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "heading", wrap_angle(self.heading))


@dataclass(frozen=True, slots=True)
class Command:
    turn_rate: float
    speed: float


@dataclass(frozen=True, slots=True)
class PursuitConfig:
    lookahead_base: float = 1.0
    lookahead_speed_gain: float = 0.5   # seconds
    lookahead_min: float = 0.5
    lookahead_max: float = 3.0
    cruise_speed: float = 1.0
    curvature_slowdown_gain: float = 2.0
    goal_tolerance: float = 0.25
    max_turn_rate: float = 2.0

    def __post_init__(self) -> None:
        if not (0.0 < self.lookahead_min <= self.lookahead_max):
            raise ValueError("need 0 < lookahead_min <= lookahead_max")
        if self.cruise_speed <= 0.0 or self.goal_tolerance <= 0.0:
            raise ValueError("cruise_speed and goal_tolerance must be positive")

    def lookahead(self, speed: float) -> float:
        L = self.lookahead_base + self.lookahead_speed_gain * speed
        return min(self.lookahead_max, max(self.lookahead_min, L))


def wrap_angle(a: float) -> float:
    """Normalize to (-pi, pi]."""
    a = math.fmod(a, 2.0 * math.pi)
    if a > math.pi:
        a -= 2.0 * math.pi
    elif a <= -math.pi:
        a += 2.0 * math.pi
    return a


def project_on_path(path: Path, p: Point2) -> float:
    """Arc-length parameter of the closest path point (ties to the smaller)."""
    pts = path.waypoints
    if len(pts) == 1:
        return 0.0
    best_d2 = math.inf
    best_arc = 0.0
    arc = 0.0
    for i in range(len(pts) - 1):
        a, b = pts[i], pts[i + 1]
        dx, dy = b.x - a.x, b.y - a.y
        ll = dx * dx + dy * dy
        t = 0.0
        if ll > 0.0:
            t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / ll
            t = 0.0 if t < 0.0 else (1.0 if t > 1.0 else t)
        ex = p.x - (a.x + t * dx)
        ey = p.y - (a.y + t * dy)
        d2 = ex * ex + ey * ey
        if d2 < best_d2:
            best_d2 = d2
            best_arc = arc + t * math.sqrt(ll)
        arc += math.sqrt(ll)
    return best_arc


def point_at_arc(path: Path, arc: float) -> Point2:
    pts = path.waypoints
    if arc <= 0.0 or len(pts) == 1:
        return pts[0] if arc <= 0.0 else pts[-1]
    left = arc
    for i in range(len(pts) - 1):
        a, b = pts[i], pts[i + 1]
        seg = a.distance_to(b)
        if left <= seg:
            u = left / seg if seg > 0.0 else 0.0
            return Point2(a.x + u * (b.x - a.x), a.y + u * (b.y - a.y))
        left -= seg
    return pts[-1]


def lookahead_point(path: Path, state: RobotState, L: float) -> tuple[Point2, float]:
    """First intersection of the radius-L circle around the robot with the
    path at arc >= the robot's projection; falls back to the point L further
    along the path (clamped to the final waypoint).  Returns (point, arc)."""
    if not path.waypoints:
        raise ValueError("empty path")
    pts = path.waypoints
    proj = project_on_path(path, state.position)
    cx, cy = state.position.x, state.position.y
    arc = 0.0
    for i in range(len(pts) - 1):
        a, b = pts[i], pts[i + 1]
        seg = a.distance_to(b)
        if seg == 0.0:
            continue
        if arc + seg >= proj - 1e-12:
            dx, dy = b.x - a.x, b.y - a.y
            fx, fy = a.x - cx, a.y - cy
            qa = dx * dx + dy * dy
            qb = 2.0 * (fx * dx + fy * dy)
            qc = fx * fx + fy * fy - L * L
            disc = qb * qb - 4.0 * qa * qc
            if disc >= 0.0:
                root = math.sqrt(disc)
                for u in ((-qb - root) / (2.0 * qa), (-qb + root) / (2.0 * qa)):
                    if -1e-12 <= u <= 1.0 + 1e-12:
                        u = min(1.0, max(0.0, u))
                        hit_arc = arc + u * seg
                        if hit_arc >= proj - 1e-9:
                            return (Point2(a.x + u * dx, a.y + u * dy), hit_arc)
        arc += seg
    total = path.arc_lengths()[-1]
    target_arc = min(proj + L, total)
    return point_at_arc(path, target_arc), target_arc


def pursuit_command(state: RobotState, goal: Point2, cfg: PursuitConfig) -> Command:
    """Classic pure-pursuit law: curvature 2 sin(alpha) / L toward the goal,
    turn rate clamped, speed reduced with commanded curvature."""
    dx = goal.x - state.position.x
    dy = goal.y - state.position.y
    dist = math.hypot(dx, dy)
    if dist == 0.0:
        return Command(0.0, 0.0)
    alpha = wrap_angle(math.atan2(dy, dx) - state.heading)
    kappa = 2.0 * math.sin(alpha) / dist
    turn = kappa * state.speed
    turn = min(cfg.max_turn_rate, max(-cfg.max_turn_rate, turn))
    speed = cfg.cruise_speed / (1.0 + cfg.curvature_slowdown_gain * abs(kappa))
    return Command(turn, speed)


def step_kinematics(state: RobotState, cmd: Command, dt: float) -> RobotState:
    """Unicycle integration: turn first, then advance along the new heading."""
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    heading = wrap_angle(state.heading + cmd.turn_rate * dt)
    x = state.position.x + cmd.speed * dt * math.cos(heading)
    y = state.position.y + cmd.speed * dt * math.sin(heading)
    return RobotState(Point2(x, y), heading, cmd.speed)
