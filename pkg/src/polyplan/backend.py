"""Kernel backend selection: compiled extension when available, else pure Python.

Set POLYPLAN_BACKEND=pure (or =native) to force a backend at import time.
Both backends are arithmetic-identical twins, so planner output does not
depend on which one is active; only speed does.
"""

from __future__ import annotations

import os

from . import _pure

try:
    from . import _native  # type: ignore[attr-defined]
except ImportError:
    _native = None

_KERNELS = (
    "orientation",
    "is_tangential",
    "point_in_polygon",
    "segment_params",
    "line_intersects_polygon",
    "first_interior_param",
    "any_hit",
    "first_hit",
    "point_in_any",
    "rasterize_polygon",
    "grid_astar",
)

active = ""


def available() -> tuple[str, ...]:
    return ("native", "pure") if _native is not None else ("pure",)


def use(name: str) -> str:
    """Bind the named backend's kernels onto this module; returns the name."""
    global active
    if name == "native":
        if _native is None:
            raise RuntimeError("native backend requested but polyplan._native is not built")
        mod = _native
    elif name == "pure":
        mod = _pure
    else:
        raise ValueError(f"unknown backend {name!r}")
    g = globals()
    for fn in _KERNELS:
        g[fn] = getattr(mod, fn)
    active = name
    return active


_forced = os.environ.get("POLYPLAN_BACKEND", "").strip().lower()
if _forced:
    use(_forced)
else:
    use("native" if _native is not None else "pure")
