"""File-format, inflation and rendering tests."""

import math

import pytest

from polyplan import fixtures
from polyplan.inflate import offset_ring
from polyplan.mapio import (
    MapValidationError,
    ParseError,
    load_map_full,
    load_scenario,
    parse_map_text,
    serialize_map,
)
from polyplan.polymap import PolygonMap
from polyplan.primitives import Path, Point2, Polygon, Rect
from polyplan.render import read_metadata, render_scene


class TestInflate:
    UNIT = [Point2(0, 0), Point2(1, 0), Point2(1, 1), Point2(0, 1)]

    def test_zero_radius_identity(self):
        assert offset_ring(self.UNIT, 0.0) == self.UNIT

    def test_unit_square_half_radius_miter(self):
        out = offset_ring(self.UNIT, 0.5)
        got = sorted((round(p.x, 12), round(p.y, 12)) for p in out)
        assert got == [(-0.5, -0.5), (-0.5, 1.5), (1.5, -0.5), (1.5, 1.5)]

    def test_sharp_spike_bevels(self):
        # 20-degree needle: the miter would reach ~5.76x the radius
        tip = [Point2(0, 0), Point2(10, -math.tan(math.radians(10)) * 10),
               Point2(10, math.tan(math.radians(10)) * 10)]
        out = offset_ring(tip, 0.5)
        assert len(out) == 4  # the tip corner split into a bevel pair
        for p in out:
            assert math.hypot(p.x, p.y) <= 10 * 0.2 + 12  # sanity: stays local

    def test_collinear_vertex_offsets_straight(self):
        ring = [Point2(0, 0), Point2(1, 0), Point2(2, 0), Point2(2, 2), Point2(0, 2)]
        out = offset_ring(ring, 0.25)
        assert any(abs(p.x - 1.0) < 1e-12 and abs(p.y + 0.25) < 1e-12 for p in out)

    def test_reflex_corner_inward_miter(self):
        # notch edges x=1 (outward -x) and y=1 (outward +y) offset by 0.1
        # meet at (0.9, 1.1)
        ell = [Point2(0, 0), Point2(2, 0), Point2(2, 2), Point2(1, 2),
               Point2(1, 1), Point2(0, 1)]
        out = offset_ring(ell, 0.1)
        assert any(abs(p.x - 0.9) < 1e-12 and abs(p.y - 1.1) < 1e-12 for p in out)


class TestMapFormat:
    def test_parse_basic(self):
        pmap, radius, inflated = parse_map_text(
            "bounds 0 0 10 10\nradius 0.5\npolygon a 1 1 3 1 3 3 1 3\n")
        assert radius == 0.5 and not inflated
        assert list(pmap.polygons) == ["a"]

    def test_parse_error_line_and_column(self):
        with pytest.raises(ParseError) as ei:
            parse_map_text("bounds 0 0 10 10\npolygon a 1 1 3 oops 3 3 1 3\n", "m.map")
        assert ei.value.line == 2 and ei.value.col == 17

    def test_missing_bounds(self):
        with pytest.raises(ParseError):
            parse_map_text("polygon a 1 1 3 1 3 3 1 3\n")

    def test_duplicate_id(self):
        with pytest.raises(ParseError):
            parse_map_text("bounds 0 0 9 9\npolygon a 1 1 3 1 3 3 1 3\n"
                           "polygon a 5 5 6 5 6 6 5 6\n")

    def test_load_inflates_by_radius(self, tmp_path):
        p = tmp_path / "m.map"
        p.write_text("bounds -5 -5 10 10\nradius 0.5\npolygon a 0 0 1 0 1 1 0 1\n")
        pmap, radius, raw = load_map_full(str(p))
        assert radius == 0.5
        got = sorted((round(v.x, 12), round(v.y, 12))
                     for v in pmap.polygons["a"].vertices)
        assert got == [(-0.5, -0.5), (-0.5, 1.5), (1.5, -0.5), (1.5, 1.5)]
        assert sorted(tuple(v) for v in raw.polygons["a"].vertices) == \
            [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)]

    def test_zero_radius_unchanged(self, tmp_path):
        p = tmp_path / "m.map"
        p.write_text("bounds 0 0 10 10\nradius 0\npolygon a 1 1 3 1 3 3 1 3\n")
        pmap, _, _ = load_map_full(str(p))
        assert sorted(tuple(v) for v in pmap.polygons["a"].vertices) == \
            [(1.0, 1.0), (1.0, 3.0), (3.0, 1.0), (3.0, 3.0)]

    def test_overlap_after_inflation_rejected(self, tmp_path):
        p = tmp_path / "m.map"
        p.write_text("bounds 0 0 10 10\nradius 0.6\n"
                     "polygon a 1 1 3 1 3 3 1 3\npolygon b 4 1 6 1 6 3 4 3\n")
        with pytest.raises(MapValidationError):
            load_map_full(str(p))

    def test_roundtrip_exact(self, tmp_path):
        src = fixtures.path("dynamic.map")
        pmap, radius, _ = load_map_full(src)
        out = tmp_path / "round.map"
        out.write_text(serialize_map(pmap, radius))
        again, radius2, _ = load_map_full(str(out))
        assert radius2 == radius
        for pid, poly in pmap.polygons.items():
            assert [tuple(v) for v in again.polygons[pid].vertices] == \
                [tuple(v) for v in poly.vertices]  # exact: repr round-trips
        # and a second serialization is byte-identical
        assert serialize_map(again, radius2) == serialize_map(pmap, radius)


class TestScenarioFormat:
    def test_fixture_loads(self):
        sc = load_scenario(fixtures.path("case1.scn"))
        assert sc.planner == "mc"
        assert tuple(sc.start) == (2.0, 2.0) and tuple(sc.target) == (18.0, 18.0)
        assert len(sc.script.events) == 1
        assert sc.script.events[0].kind == "disappear"

    def test_appear_payload_inflated(self):
        sc = load_scenario(fixtures.path("case4.scn"))
        ev = sc.script.events[0]
        assert ev.kind == "appear"
        xs = [v.x for v in ev.polygon.vertices]
        assert min(xs) == pytest.approx(9.5 - 0.6)  # map radius applied

    def test_bad_event_kind(self, tmp_path):
        m = tmp_path / "m.map"
        m.write_text("bounds 0 0 10 10\nradius 0\npolygon a 1 1 3 1 3 3 1 3\n")
        s = tmp_path / "s.scn"
        s.write_text(f"map {m.name}\nstart 0 0\ntarget 9 9\nevent 1 explode a\n")
        with pytest.raises(ParseError):
            load_scenario(str(s))

    def test_unsorted_events_rejected(self, tmp_path):
        m = tmp_path / "m.map"
        m.write_text("bounds 0 0 10 10\nradius 0\npolygon a 1 1 3 1 3 3 1 3\n")
        s = tmp_path / "s.scn"
        s.write_text(f"map {m.name}\nstart 0 0\ntarget 9 9\n"
                     "event 5 disappear a\nevent 1 disappear a\n")
        sc = load_scenario(str(s))  # parser sorts by time
        assert [e.time for e in sc.script.events] == [1.0, 5.0]

    def test_pursuit_overrides(self, tmp_path):
        m = tmp_path / "m.map"
        m.write_text("bounds 0 0 10 10\nradius 0\npolygon a 1 1 3 1 3 3 1 3\n")
        s = tmp_path / "s.scn"
        s.write_text(f"map {m.name}\nstart 0 0\ntarget 9 9\n"
                     "pursuit cruise_speed 2.0\npursuit goal_tolerance 0.1\n")
        sc = load_scenario(str(s))
        assert sc.pursuit.cruise_speed == 2.0 and sc.pursuit.goal_tolerance == 0.1


class TestRender:
    def _simple_scene(self, tmp_path, name="scene.svg"):
        m = PolygonMap([Polygon([(3, 3), (5, 3), (5, 5), (3, 5)], "a")],
                       Rect(0, 0, 10, 10))
        path = Path([(0, 0), (3, 3), (9, 9)])
        out = str(tmp_path / name)
        render_scene(m, None, [("mc", path)], out,
                     start=Point2(0, 0), target=Point2(9, 9))
        return out

    def test_svg_structure_and_metadata(self, tmp_path):
        out = self._simple_scene(tmp_path)
        text = open(out).read()
        assert text.count("<polyline") == 1
        assert text.count('data-marker="start"') == 1
        assert text.count('data-marker="target"') == 1
        meta = read_metadata(out)
        assert meta["paths"][0]["label"] == "mc"
        assert meta["paths"][0]["color"] == "#d62728"
        assert meta["paths"][0]["segments"] == 2

    def test_byte_identical_rerender(self, tmp_path):
        a = self._simple_scene(tmp_path, "a.svg")
        b = self._simple_scene(tmp_path, "b.svg")
        assert open(a, "rb").read() == open(b, "rb").read()

    def test_empty_map_single_stroke_and_markers(self, tmp_path):
        m = PolygonMap([], Rect(0, 0, 10, 10))
        out = str(tmp_path / "empty.svg")
        render_scene(m, None, [("mc", Path([(1, 1), (9, 9)]))], out,
                     start=Point2(1, 1), target=Point2(9, 9))
        text = open(out).read()
        assert text.count("<polyline") == 1
        assert text.count("<polygon") == 0
        assert text.count("data-marker=") == 2

    def test_planner_colors_in_metadata(self, tmp_path, scenarios):
        from polyplan import gridplan, minimal_construct as mc

        sc = scenarios["static"]
        r1 = mc.plan(sc.map, sc.start, sc.target)
        r2 = gridplan.plan_on_grid(sc.map, sc.start, sc.target)
        out = str(tmp_path / "two.svg")
        render_scene(sc.map, r1.graph, [("mc", r1.path), ("grid", r2.path)], out,
                     start=sc.start, target=sc.target)
        meta = read_metadata(out)
        by_label = {p["label"]: p for p in meta["paths"]}
        assert by_label["mc"]["color"] == "#d62728"
        assert by_label["grid"]["color"] == "#1f77b4"
        assert by_label["mc"]["length"] < by_label["grid"]["length"]
        assert meta["graph_edges"] > 0
