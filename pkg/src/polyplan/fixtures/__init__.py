"""Bundled benchmark fixtures: a static cluttered map, the single-square
analytic map, and four dynamic-change cases (disappear mid-map, triple
disappear, disappear near start, appear on the path)."""

from importlib import resources

SCENARIOS = ("static", "case1", "case2", "case3", "case4")


def path(name: str) -> str:
    """Absolute path of a bundled fixture file, e.g. path('case1.scn')."""
    return str(resources.files(__package__).joinpath(name))


def scenario_paths() -> list[str]:
    return [path(f"{name}.scn") for name in SCENARIOS]
