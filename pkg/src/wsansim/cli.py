"""Command-line front end: plan, validate, run.

Exit codes: 0 success (all fires contained), 1 validation error,
2 runtime error, 3 run completed but some fire was never contained.
Output files are written atomically (write to a temp file, then rename)
so interrupted runs never leave truncated outputs.
"""

import argparse
import os
import sys
import tempfile

from .engine import Engine
from .geometry import GridSpec, GridSpecError, node_count_center, node_count_intersection, plan_deployment
from .scenario import ScenarioValidationError, load_scenario

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_RUNTIME = 2
EXIT_UNCONTAINED = 3


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".wsansim-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def cmd_plan(args) -> int:
    try:
        spec = GridSpec(n=args.n, r=args.r)
    except GridSpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    deployment = plan_deployment(spec)
    print(f"grid: {spec.n}x{spec.n} cells, cell side {spec.cell_side} m, "
          f"area {spec.area_side} x {spec.area_side} m")
    print(f"node counts: center: {node_count_center(spec.n)}, "
          f"intersection: {node_count_intersection(spec.n)}")
    print(f"sensors ({len(deployment.sensors)}):")
    for sid, pos in deployment.sensors:
        print(f"  s{sid}  ({pos[0]}, {pos[1]})")
    print("cluster heads (4):")
    for chno, pos in deployment.cluster_heads:
        print(f"  ch{chno}  ({pos[0]}, {pos[1]})")
    print("actors (4):")
    for aa, pos in deployment.actors:
        print(f"  a{aa}  ({pos[0]}, {pos[1]})")
    return EXIT_OK


def cmd_validate(args) -> int:
    status = EXIT_OK
    for path in args.scenario:
        try:
            scenario = load_scenario(path)
        except ScenarioValidationError as exc:
            print(f"{path}: INVALID")
            print(exc.report())
            status = EXIT_VALIDATION
            continue
        print(f"{path}: ok (scenario {scenario.name!r})")
        for warning in scenario.warnings:
            print(f"  warning - {warning}")
    return status


def _default_path(scenario_path: str, suffix: str) -> str:
    stem, _ext = os.path.splitext(os.path.basename(scenario_path))
    return stem + suffix


def _print_summary(scenario, result) -> None:
    m = result.metrics
    print(f"scenario {scenario.name!r}: {scenario.topology.kind.value}"
          + (", cloud-gated" if scenario.topology.cloud_gated else ""))
    contained = sum(1 for f in m.fires.values() if f.contained)
    print(f"fires contained: {contained}/{len(m.fires)}")

    def fmt(value):
        return "-" if value is None else f"{float(value):.6f}"

    for fm in m.fires.values():
        line = (f"  {fm.fire_id}: detection {fmt(fm.detection_latency)} s, "
                f"dispatch {fmt(fm.dispatch_latency)} s, "
                f"response {fmt(fm.response_latency)} s, "
                f"containment {fmt(fm.containment_time)} s")
        if fm.burned_area_at_containment is not None:
            line += f", burned {fm.burned_area_at_containment:.1f} m^2"
        print(line)
    for cls, stats in sorted(m.link_stats.items()):
        print(f"  {cls}: sent {stats.sent}, delivered {stats.delivered}, dropped {stats.dropped}")
    print(f"  pubsub deliveries: {m.pubsub_deliveries}")


def cmd_run(args) -> int:
    if len(args.scenario) > 1 and (args.trace or args.metrics):
        print("error: --trace/--metrics require a single scenario", file=sys.stderr)
        return EXIT_RUNTIME
    status = EXIT_OK
    for path in args.scenario:
        try:
            scenario = load_scenario(path)
        except ScenarioValidationError as exc:
            print(f"{path}: INVALID", file=sys.stderr)
            print(exc.report(), file=sys.stderr)
            return EXIT_VALIDATION
        if not args.quiet:
            for warning in scenario.warnings:
                print(f"warning - {warning}")
        try:
            engine = Engine(scenario, seed_override=args.seed)
            result = engine.run()
        except Exception as exc:  # runtime failure, not a validation problem
            print(f"error: run failed: {exc}", file=sys.stderr)
            return EXIT_RUNTIME
        trace_path = args.trace or _default_path(path, ".trace.jsonl")
        metrics_path = args.metrics or _default_path(path, ".metrics.csv")
        _atomic_write(trace_path, result.trace)
        _atomic_write(metrics_path, result.metrics.to_csv())
        if not args.quiet:
            _print_summary(scenario, result)
            print(f"trace written to {trace_path}; metrics written to {metrics_path}")
        if scenario.fire_events and not result.all_contained:
            status = EXIT_UNCONTAINED
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wsansim",
        description="Deterministic simulator of cloud-integrated sensor/actor networks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_plan = sub.add_parser("plan", help="print the deployment for a grid")
    p_plan.add_argument("--n", type=int, required=True, help="cells per side (even)")
    p_plan.add_argument("--r", type=float, required=True, help="sensing range in meters")
    p_plan.set_defaults(func=cmd_plan)

    p_val = sub.add_parser("validate", help="validate scenario files")
    p_val.add_argument("scenario", nargs="+", help="scenario JSON path(s)")
    p_val.set_defaults(func=cmd_validate)

    p_run = sub.add_parser("run", help="run scenario files")
    p_run.add_argument("scenario", nargs="+", help="scenario JSON path(s)")
    p_run.add_argument("--trace", help="trace output path (single scenario only)")
    p_run.add_argument("--metrics", help="metrics CSV output path (single scenario only)")
    p_run.add_argument("--seed", type=int, default=None, help="override the RNG seed")
    p_run.add_argument("--quiet", action="store_true", help="suppress the run summary")
    p_run.set_defaults(func=cmd_run)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
