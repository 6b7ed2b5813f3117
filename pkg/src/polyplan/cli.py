"""Command-line front end.

Subcommands:
    plan      one-shot planning on a map or scenario, renders the scene
    simulate  run a scenario through the replanning loop, renders the result
    bench     repeated scenario runs per planner, timing tables + JSON report
    validate  map linting

Exit codes: 0 ok, 2 parse error, 3 validation error, 4 run failure.
Metric files written by plan/simulate contain no wall-clock fields, so
repeated runs on identical inputs are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import backend
from .mapio import (
    MapValidationError,
    ParseError,
    Scenario,
    load_map_full,
    load_scenario,
    serialize_map,
)
from .planners import make_planner
from .polymap import validate_map
from .primitives import Point2
from .randmaps import generate_instance
from .render import render_scene
from .simulate import run_scenario

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_RUN = 4


class _RunFailure(RuntimeError):
    pass


def _out_path(args, name: str) -> str:
    os.makedirs(args.out, exist_ok=True)
    return os.path.join(args.out, name)


def _load_instance(args):
    """Map + query from a file argument or the seeded generator."""
    if args.input is not None:
        lower = args.input.lower()
        if lower.endswith(".scn"):
            sc = load_scenario(args.input)
            return sc.map, sc.start, sc.target, sc
        pmap, _, _ = load_map_full(args.input)
        if args.start is None or args.target is None:
            raise _RunFailure("--start and --target are required with a map file")
        s = Point2(args.start[0], args.start[1])
        t = Point2(args.target[0], args.target[1])
        return pmap, s, t, None
    if args.seed is None:
        raise _RunFailure("give a map/scenario file or --seed")
    inst = generate_instance(args.seed)
    return inst.map, inst.start, inst.target, None


def cmd_plan(args) -> int:
    pmap, s, t, scenario = _load_instance(args)
    planner = make_planner(args.planner, args.grid_resolution)
    result = planner.plan(pmap, s, t)
    metrics = {
        "planner": planner.name,
        "status": result.status,
        "length": result.path.length if result.found else None,
        "segments": result.path.segments if result.found else None,
        "waypoints": [[p.x, p.y] for p in result.path.waypoints] if result.found else None,
        "counters": result.counters.as_dict(),
    }
    with open(_out_path(args, "plan_metrics.json"), "w", encoding="utf-8") as fh:
        json.dump(metrics, fh, sort_keys=True, indent=2)
        fh.write("\n")
    paths = [(planner.name, result.path)] if result.found else []
    render_scene(pmap, result.graph, paths, _out_path(args, "plan.svg"),
                 start=s, target=t)
    if not result.found:
        print(f"{planner.name}: {result.status}")
        return EXIT_RUN
    print(f"{planner.name}: length={result.path.length:.6f} "
          f"segments={result.path.segments} "
          f"tests={result.counters.intersection_tests}")
    return EXIT_OK


def _scenario_runs(scenario: Scenario, planner_names, grid_resolution):
    runs = []
    for name in planner_names:
        planner = make_planner(name, grid_resolution or scenario.grid_resolution)
        runs.append(run_scenario(scenario.map, scenario.script, scenario.start,
                                 scenario.target, planner, scenario.pursuit,
                                 scenario_name=scenario.name))
    return runs


def cmd_simulate(args) -> int:
    scenario = load_scenario(args.input)
    planner_name = args.planner or scenario.planner
    planner = make_planner(planner_name, args.grid_resolution or scenario.grid_resolution)
    run = run_scenario(scenario.map, scenario.script, scenario.start,
                       scenario.target, planner, scenario.pursuit,
                       scenario_name=scenario.name)
    with open(_out_path(args, "simulate_metrics.json"), "w", encoding="utf-8") as fh:
        json.dump(run.metrics(), fh, sort_keys=True, indent=2)
        fh.write("\n")
    # one frame per plan call: the new path on the map state of that moment
    from .polymap import apply_event

    current = scenario.map
    pending = list(scenario.script.events)
    frame = 0
    for rec, path in zip([r for r in run.replans if r.status == "ok"], run.paths):
        while pending and pending[0].time <= rec.time + 1e-9:
            current = apply_event(current, pending.pop(0))
        render_scene(current, None, [(planner.name, path)],
                     _out_path(args, f"simulate_{frame:02d}.svg"),
                     start=scenario.start, target=scenario.target)
        frame += 1
    final_map = run.final_map if run.final_map is not None else scenario.map
    paths = [(planner.name, p) for p in run.paths[-1:]]
    render_scene(final_map, None, paths, _out_path(args, "simulate.svg"),
                 start=scenario.start, target=scenario.target,
                 trace=[(tr.x, tr.y) for tr in run.ticks])
    if run.succeeded:
        print(f"{planner.name}: goal reached at t={run.goal_time:.2f}s "
              f"with {run.plan_calls} plan calls")
        return EXIT_OK
    print(f"{planner.name}: failed ({run.failure}) after {run.plan_calls} plan calls")
    return EXIT_RUN


def _median(xs):
    ys = sorted(xs)
    if not ys:
        return 0.0
    mid = len(ys) // 2
    return ys[mid] if len(ys) % 2 else 0.5 * (ys[mid - 1] + ys[mid])


def cmd_bench(args) -> int:
    planner_names = ("mc", "grid")
    table_rows = []
    report = {"backend": backend.active, "repetitions": args.reps, "cases": []}
    failures = 0
    for spath in args.scenarios:
        scenario = load_scenario(spath)
        case = {"scenario": scenario.name, "planners": {}}
        for pname in planner_names:
            walls, preps = [], []
            reference = None
            for _ in range(args.reps):
                run = _scenario_runs(scenario, [pname], args.grid_resolution)[0]
                if reference is None:
                    reference = run
                walls.append([r.wall_seconds for r in run.replans])
                preps.append([r.prep_seconds for r in run.replans])
            if reference is None or not reference.succeeded:
                failures += 1
                case["planners"][pname] = {
                    "failed": reference.failure if reference else "no runs"}
                continue
            n_replans = min(len(w) for w in walls)
            med_walls = [_median([w[i] for w in walls]) for i in range(n_replans)]
            med_preps = [_median([p[i] for p in preps]) for i in range(n_replans)]
            case["planners"][pname] = {
                "replan_seconds": med_walls,
                "raster_seconds": med_preps,
                "plan_calls": reference.plan_calls,
                "goal_time": reference.goal_time,
                "path_lengths": [r.path_length for r in reference.replans],
                "path_segments": [r.path_segments for r in reference.replans],
                "intersection_tests": [
                    r.counters.get("intersection_tests", 0) for r in reference.replans],
            }
        report["cases"].append(case)
        mc_info = case["planners"].get("mc", {})
        grid_info = case["planners"].get("grid", {})

        def _fmt_two(info):
            secs = info.get("replan_seconds", [])
            if not secs:
                return "failed"
            return ", ".join(f"{s:.4f}" for s in secs[:2])

        ratio = ""
        if mc_info.get("replan_seconds") and grid_info.get("replan_seconds"):
            m = _median(mc_info["replan_seconds"])
            gmed = _median(grid_info["replan_seconds"])
            ratio = f"{gmed / m:.1f}x" if m > 0 else "inf"
        table_rows.append((scenario.name, _fmt_two(mc_info), _fmt_two(grid_info), ratio,
                           mc_info.get("goal_time"), grid_info.get("goal_time")))

    out_lines = []
    out_lines.append(f"Replan wall time (s, median of {args.reps} reps; search only; "
                     f"backend={backend.active})")
    out_lines.append(f"{'case':<14} {'minimal construct':<22} {'grid A*':<22} {'grid/mc':<8}")
    for name, mc_s, grid_s, ratio, _, _ in table_rows:
        out_lines.append(f"{name:<14} {mc_s:<22} {grid_s:<22} {ratio:<8}")
    out_lines.append("")
    out_lines.append("Total simulated time to goal (s)")
    out_lines.append(f"{'case':<14} {'minimal construct':<22} {'grid A*':<22}")
    for name, _, _, _, mc_g, grid_g in table_rows:
        mc_txt = f"{mc_g:.2f}" if mc_g is not None else "failed"
        grid_txt = f"{grid_g:.2f}" if grid_g is not None else "failed"
        out_lines.append(f"{name:<14} {mc_txt:<22} {grid_txt:<22}")
    table = "\n".join(out_lines) + "\n"
    with open(_out_path(args, "bench_table.txt"), "w", encoding="utf-8") as fh:
        fh.write(table)
    with open(_out_path(args, "bench_report.json"), "w", encoding="utf-8") as fh:
        json.dump(report, fh, sort_keys=True, indent=2)
        fh.write("\n")
    print(table, end="")
    return EXIT_OK if failures == 0 else EXIT_RUN


def cmd_validate(args) -> int:
    if args.input is not None:
        pmap, radius, raw = load_map_full(args.input)
        print(f"{args.input}: ok ({len(pmap.polygons)} polygons, radius {radius})")
        return EXIT_OK
    if args.seed is None:
        raise _RunFailure("give a map file or --seed")
    inst = generate_instance(args.seed)
    report = validate_map(inst.map)
    if args.out:
        with open(_out_path(args, f"random_{args.seed}.map"), "w", encoding="utf-8") as fh:
            fh.write(serialize_map(inst.map, 0.0, inflated=False))
    print(f"seed {args.seed}: {len(inst.map.polygons)} polygons, {report}")
    return EXIT_OK if report.ok else EXIT_VALIDATION


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="polyplan",
        description="Visibility-graph path planning benchmark suite")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, with_input=True):
        if with_input:
            p.add_argument("input", nargs="?", help="map (.map) or scenario (.scn) file")
        p.add_argument("--planner", choices=("mc", "grid", "oracle"), default=None)
        p.add_argument("--grid-resolution", type=float, default=None,
                       help="grid cell size in map units (default: extent/200)")
        p.add_argument("--seed", type=int, default=None,
                       help="random instance seed (used when no file is given)")
        p.add_argument("--out", default="out", help="output directory")
        p.add_argument("--reps", type=int, default=5, help="benchmark repetitions")

    p_plan = sub.add_parser("plan", help="one-shot planning + render")
    common(p_plan)
    p_plan.add_argument("--start", type=float, nargs=2, metavar=("X", "Y"))
    p_plan.add_argument("--target", type=float, nargs=2, metavar=("X", "Y"))
    p_plan.set_defaults(fn=cmd_plan, planner="mc")

    p_sim = sub.add_parser("simulate", help="scenario run + render")
    common(p_sim)
    p_sim.set_defaults(fn=cmd_simulate)

    p_bench = sub.add_parser("bench", help="benchmark table over scenarios")
    p_bench.add_argument("scenarios", nargs="+", help="scenario files")
    common(p_bench, with_input=False)
    p_bench.set_defaults(fn=cmd_bench)

    p_val = sub.add_parser("validate", help="map linting")
    common(p_val)
    p_val.set_defaults(fn=cmd_validate)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "planner", None) is None and args.command == "plan":
        args.planner = "mc"
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except MapValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except _RunFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUN
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
