"""World-model tests: validation, event application, path collision."""

import pytest

from polyplan.polymap import (
    MapEvent,
    MapEventError,
    PolygonMap,
    apply_event,
    path_collides,
    validate_map,
)
from polyplan.primitives import Path, Point2, Polygon, Rect


def box(pid, x0, y0, x1, y1):
    return Polygon([(x0, y0), (x1, y0), (x1, y1), (x0, y1)], pid)


@pytest.fixture
def base_map():
    return PolygonMap([box("a", 2, 2, 4, 4), box("b", 6, 6, 8, 8)], Rect(0, 0, 10, 10))


class TestValidate:
    def test_separated_squares_ok(self, base_map):
        assert validate_map(base_map).ok

    def test_overlapping_squares_reported(self):
        m = PolygonMap([box("a", 2, 2, 5, 5), box("b", 4, 4, 7, 7)], Rect(0, 0, 10, 10))
        report = validate_map(m)
        assert not report.ok
        assert any(v.kind == "overlap" and set(v.ids) == {"a", "b"}
                   for v in report.violations)

    def test_out_of_bounds_reported(self):
        m = PolygonMap([box("a", -1, 2, 4, 4)], Rect(0, 0, 10, 10))
        report = validate_map(m)
        assert any(v.kind == "out-of-bounds" and v.ids == ("a",)
                   for v in report.violations)

    def test_self_intersection_reported(self):
        bowl = Polygon([(0, 0), (2, 2), (2, 0), (0, 2)], "bow", validate=False)
        m = PolygonMap([bowl], Rect(-1, -1, 5, 5))
        report = validate_map(m)
        assert any(v.kind == "self-intersection" for v in report.violations)

    def test_touching_corners_allowed(self):
        m = PolygonMap([box("a", 0, 0, 2, 2), box("b", 2, 2, 4, 4)], Rect(0, 0, 10, 10))
        assert validate_map(m).ok

    def test_shared_edge_run_rejected(self):
        m = PolygonMap([box("a", 0, 0, 2, 2), box("b", 2, 0, 4, 2)], Rect(0, 0, 10, 10))
        assert not validate_map(m).ok


class TestApplyEvent:
    def test_disappear(self, base_map):
        out = apply_event(base_map, MapEvent("disappear", "a", 1.0))
        assert "a" not in out.polygons and out.version == base_map.version + 1
        assert "a" in base_map.polygons  # original untouched

    def test_appear_overlapping_rejected(self, base_map):
        bad = MapEvent("appear", "c", 1.0, polygon=box("c", 3, 3, 5, 5))
        with pytest.raises(MapEventError):
            apply_event(base_map, bad)
        assert base_map.version == 0

    def test_move_translates(self, base_map):
        out = apply_event(base_map, MapEvent("move", "a", 1.0, offset=(1.0, 0.0)))
        got = [tuple(v) for v in out.polygons["a"].vertices]
        assert got == [(3.0, 2.0), (5.0, 2.0), (5.0, 4.0), (3.0, 4.0)]

    def test_unknown_and_duplicate_ids(self, base_map):
        with pytest.raises(MapEventError):
            apply_event(base_map, MapEvent("disappear", "zz", 1.0))
        with pytest.raises(MapEventError):
            apply_event(base_map, MapEvent("appear", "a", 1.0,
                                           polygon=box("a", 0, 8, 1, 9)))

    def test_event_then_inverse_restores_map(self, base_map):
        ev = MapEvent("move", "b", 1.0, offset=(0.5, -0.5))
        fwd = apply_event(base_map, ev)
        back = apply_event(fwd, ev.inverse())
        for pid, p in base_map.polygons.items():
            assert [tuple(v) for v in back.polygons[pid].vertices] == \
                [tuple(v) for v in p.vertices]
        assert back.version == base_map.version + 2
        ev2 = MapEvent("appear", "c", 1.0, polygon=box("c", 0, 8, 1, 9))
        fwd2 = apply_event(base_map, ev2)
        back2 = apply_event(fwd2, ev2.inverse())
        assert set(back2.polygons) == set(base_map.polygons)


class TestPathCollides:
    def test_empty_map(self):
        m = PolygonMap([], Rect(0, 0, 10, 10))
        assert not path_collides(m, Path([(0, 5), (10, 5)]))

    def test_crossing_segment(self, base_map):
        assert path_collides(base_map, Path([(0, 3), (5, 3)]))

    def test_corner_hug_is_free(self, base_map):
        # path bending exactly at a's corner (4,4): grazing convention
        assert not path_collides(base_map, Path([(0, 5), (4, 4), (5, 0)]))

    def test_monotone_under_disjoint_addition(self, base_map):
        path = Path([(0, 9), (9, 9), (9, 0)])
        assert not path_collides(base_map, path)
        bigger = apply_event(base_map, MapEvent("appear", "c", 1.0,
                                                polygon=box("c", 1, 5, 3, 7)))
        assert not path_collides(bigger, path)

    def test_needs_two_waypoints(self, base_map):
        with pytest.raises(ValueError):
            path_collides(base_map, Path([(0, 0)]))


def test_polygon_at(base_map):
    assert base_map.polygon_at(Point2(3, 3)) == "a"
    assert base_map.polygon_at(Point2(7, 7)) == "b"
    assert base_map.polygon_at(Point2(5, 5)) is None
