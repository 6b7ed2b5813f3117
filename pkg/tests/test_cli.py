"""CLI surface tests: subcommands, exit codes, byte-identical reruns."""

import json
import os

import pytest

from polyplan import fixtures
from polyplan.cli import EXIT_OK, EXIT_PARSE, EXIT_RUN, EXIT_VALIDATION, main


def read(path):
    with open(path, "rb") as fh:
        return fh.read()


class TestPlan:
    def test_plan_scenario(self, tmp_path):
        out = str(tmp_path / "o")
        assert main(["plan", fixtures.path("static.scn"), "--out", out]) == EXIT_OK
        metrics = json.load(open(os.path.join(out, "plan_metrics.json")))
        assert metrics["planner"] == "mc"
        assert metrics["segments"] == 4
        assert os.path.exists(os.path.join(out, "plan.svg"))

    def test_plan_map_with_query(self, tmp_path):
        out = str(tmp_path / "o")
        code = main(["plan", fixtures.path("square.map"),
                     "--start", "0", "0", "--target", "10", "0", "--out", out])
        assert code == EXIT_OK
        metrics = json.load(open(os.path.join(out, "plan_metrics.json")))
        assert metrics["length"] == pytest.approx(2 + 2 * 17 ** 0.5, abs=1e-9)

    def test_plan_random_seed(self, tmp_path):
        out = str(tmp_path / "o")
        assert main(["plan", "--seed", "7", "--out", out]) == EXIT_OK

    def test_plan_oracle_and_grid(self, tmp_path):
        for planner in ("oracle", "grid"):
            out = str(tmp_path / planner)
            code = main(["plan", fixtures.path("static.scn"),
                         "--planner", planner, "--out", out])
            assert code == EXIT_OK

    def test_map_without_query_fails(self, tmp_path):
        assert main(["plan", fixtures.path("square.map"),
                     "--out", str(tmp_path / "o")]) == EXIT_RUN

    def test_parse_error_exit_code(self, tmp_path):
        bad = tmp_path / "bad.map"
        bad.write_text("bounds 0 0 10\n")
        assert main(["plan", str(bad), "--start", "0", "0",
                     "--target", "1", "1", "--out", str(tmp_path / "o")]) == EXIT_PARSE

    def test_validation_error_exit_code(self, tmp_path):
        bad = tmp_path / "bad.map"
        bad.write_text("bounds 0 0 10 10\nradius 0\n"
                       "polygon a 1 1 5 1 5 5 1 5\npolygon b 2 2 6 2 6 6 2 6\n")
        assert main(["plan", str(bad), "--start", "0", "0",
                     "--target", "9", "9", "--out", str(tmp_path / "o")]) == EXIT_VALIDATION


class TestSimulate:
    def test_simulate_case(self, tmp_path):
        out = str(tmp_path / "o")
        assert main(["simulate", fixtures.path("case2.scn"), "--out", out]) == EXIT_OK
        metrics = json.load(open(os.path.join(out, "simulate_metrics.json")))
        assert metrics["goal_time"] is not None
        assert len(metrics["replans"]) == 2
        assert "wall" not in json.dumps(metrics)  # no timing in metric logs
        # one frame per plan call plus the final trace scene
        assert os.path.exists(os.path.join(out, "simulate_00.svg"))
        assert os.path.exists(os.path.join(out, "simulate_01.svg"))
        assert not os.path.exists(os.path.join(out, "simulate_02.svg"))

    def test_simulate_grid_planner_flag(self, tmp_path):
        out = str(tmp_path / "o")
        assert main(["simulate", fixtures.path("case1.scn"),
                     "--planner", "grid", "--out", out]) == EXIT_OK


class TestDeterminism:
    def test_plan_byte_identical(self, tmp_path):
        a, b = str(tmp_path / "a"), str(tmp_path / "b")
        for out in (a, b):
            assert main(["plan", fixtures.path("static.scn"), "--out", out]) == EXIT_OK
        assert read(os.path.join(a, "plan.svg")) == read(os.path.join(b, "plan.svg"))
        assert read(os.path.join(a, "plan_metrics.json")) == \
            read(os.path.join(b, "plan_metrics.json"))

    def test_plan_seeded_byte_identical(self, tmp_path):
        a, b = str(tmp_path / "a"), str(tmp_path / "b")
        for out in (a, b):
            assert main(["plan", "--seed", "42", "--out", out]) == EXIT_OK
        assert read(os.path.join(a, "plan.svg")) == read(os.path.join(b, "plan.svg"))

    def test_simulate_byte_identical(self, tmp_path):
        a, b = str(tmp_path / "a"), str(tmp_path / "b")
        for out in (a, b):
            assert main(["simulate", fixtures.path("case3.scn"), "--out", out]) == EXIT_OK
        assert read(os.path.join(a, "simulate.svg")) == read(os.path.join(b, "simulate.svg"))
        assert read(os.path.join(a, "simulate_metrics.json")) == \
            read(os.path.join(b, "simulate_metrics.json"))


class TestBenchAndValidate:
    def test_bench_single_scenario(self, tmp_path):
        out = str(tmp_path / "o")
        code = main(["bench", fixtures.path("case1.scn"), "--reps", "1", "--out", out])
        assert code == EXIT_OK
        table = open(os.path.join(out, "bench_table.txt")).read()
        assert "case1" in table and "grid/mc" in table
        report = json.load(open(os.path.join(out, "bench_report.json")))
        planners = report["cases"][0]["planners"]
        assert set(planners) == {"mc", "grid"}
        assert len(planners["mc"]["replan_seconds"]) == 2

    def test_validate_fixture_maps(self):
        for name in ("dynamic.map", "static.map", "square.map"):
            assert main(["validate", fixtures.path(name)]) == EXIT_OK

    def test_validate_seeded(self, tmp_path):
        assert main(["validate", "--seed", "5", "--out", str(tmp_path / "o")]) == EXIT_OK
