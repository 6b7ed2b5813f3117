"""Deterministic SVG rendering of maps, explored graphs and paths.

Obstacles are filled dark, explored graph edges are thin grey lines, each
labeled path gets its planner color (lazy planner red, grid blue, oracle
green).  A <metadata> block embeds path lengths/segment counts as JSON so
tests can assert on the figure without pixel inspection.  Output bytes are
a pure function of the inputs: fixed float formatting, no timestamps.
"""

from __future__ import annotations

import json
from typing import Iterable, Optional

from .polymap import PolygonMap
from .primitives import Path, Point2

PATH_COLORS = {
    "mc": "#d62728",      # red
    "grid": "#1f77b4",    # blue
    "oracle": "#2ca02c",  # green
}
_FALLBACK_COLOR = "#9467bd"
_OBSTACLE_FILL = "#1a1a1a"
_GRAPH_STROKE = "#b0b0b0"


def _fmt(v: float) -> str:
    s = f"{v:.6f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def render_scene(pmap: PolygonMap,
                 graph,
                 paths: list[tuple[str, Path]],
                 out_file: str,
                 start: Optional[Point2] = None,
                 target: Optional[Point2] = None,
                 trace: Optional[Iterable[tuple[float, float]]] = None) -> None:
    """Write the scene as SVG; graph may be None or expose .edges()."""
    b = pmap.bounds
    margin = 0.03 * b.extent
    x0, y0 = b.xmin - margin, b.ymin - margin
    w, h = b.width + 2 * margin, b.height + 2 * margin
    scale = 800.0 / max(w, h)

    def sx(x: float) -> str:
        return _fmt((x - x0) * scale)

    def sy(y: float) -> str:
        # flip: SVG y grows downward
        return _fmt((y0 + h - y) * scale)

    lines: list[str] = []
    lines.append('<?xml version="1.0" encoding="UTF-8"?>')
    lines.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(w * scale)}" '
        f'height="{_fmt(h * scale)}" viewBox="0 0 {_fmt(w * scale)} {_fmt(h * scale)}">')
    meta = {
        "bounds": [b.xmin, b.ymin, b.xmax, b.ymax],
        "polygons": len(pmap.polygons),
        "graph_edges": graph.edge_count if graph is not None else 0,
        "paths": [
            {"label": label, "length": p.length, "segments": p.segments,
             "color": PATH_COLORS.get(label, _FALLBACK_COLOR)}
            for label, p in paths
        ],
    }
    lines.append("<metadata>" + json.dumps(meta, sort_keys=True) + "</metadata>")
    lines.append('<rect width="100%" height="100%" fill="#ffffff"/>')
    lines.append(f'<rect x="{sx(b.xmin)}" y="{sy(b.ymax)}" '
                 f'width="{_fmt(b.width * scale)}" height="{_fmt(b.height * scale)}" '
                 f'fill="none" stroke="#888888" stroke-width="1"/>')
    if graph is not None:
        lines.append(f'<g stroke="{_GRAPH_STROKE}" stroke-width="0.6" opacity="0.8">')
        for u, v in graph.edges():
            lines.append(f'<line x1="{sx(u.x)}" y1="{sy(u.y)}" '
                         f'x2="{sx(v.x)}" y2="{sy(v.y)}"/>')
        lines.append("</g>")
    for p in pmap.polygons.values():
        pts = " ".join(f"{sx(v.x)},{sy(v.y)}" for v in p.vertices)
        lines.append(f'<polygon points="{pts}" fill="{_OBSTACLE_FILL}"/>')
    if trace is not None:
        pts = " ".join(f"{sx(x)},{sy(y)}" for x, y in trace)
        if pts:
            lines.append(f'<polyline points="{pts}" fill="none" '
                         f'stroke="#ff9900" stroke-width="1.5" opacity="0.9"/>')
    for label, path in paths:
        color = PATH_COLORS.get(label, _FALLBACK_COLOR)
        pts = " ".join(f"{sx(p.x)},{sy(p.y)}" for p in path.waypoints)
        lines.append(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                     f'stroke-width="2.5" data-label="{label}"/>')
    r = _fmt(0.012 * b.extent * scale)
    if start is not None:
        lines.append(f'<circle cx="{sx(start.x)}" cy="{sy(start.y)}" r="{r}" '
                     f'fill="#2ca02c" stroke="#000000" stroke-width="1" data-marker="start"/>')
    if target is not None:
        lines.append(f'<circle cx="{sx(target.x)}" cy="{sy(target.y)}" r="{r}" '
                     f'fill="#ffffff" stroke="#d62728" stroke-width="2" data-marker="target"/>')
    lines.append("</svg>")
    with open(out_file, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_metadata(svg_path: str) -> dict:
    """Parse back the embedded JSON metadata block."""
    with open(svg_path, "r", encoding="utf-8") as fh:
        text = fh.read()
    lo = text.index("<metadata>") + len("<metadata>")
    hi = text.index("</metadata>")
    return json.loads(text[lo:hi])
