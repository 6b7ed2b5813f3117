"""polyplan: lazy visibility-graph path planning in polygonal maps.

Plans shortest obstacle-avoiding paths by discovering only the portion of
the visibility graph an A* search actually needs, alongside a full
visibility-graph oracle and a grid A* baseline, a pure-pursuit tracker and a
dynamic-map replanning simulator.  Hot geometry/search kernels run from a
compiled extension when built, with an identical pure-Python fallback.
"""

from .primitives import Path, Point2, Polygon, Rect, Segment2

__version__ = "0.1.0"

__all__ = [
    "Path",
    "Point2",
    "Polygon",
    "Rect",
    "Segment2",
    "__version__",
]
