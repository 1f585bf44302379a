"""Command-line front end for the convexhard toolkit.

Subcommands::

    gen          seeded lattice instance          -> instance file
    reduce       instance file                    -> points file
    solve        mis / es / lecs optimum or decision for --k
    check        lemma, oracle and net check battery -> report
    net          weak epsilon-net verdict for B over L
    discrepancy  red (L) / blue (B) discrepancy over convex ranges
    approx       projection approximation of the largest convex subset
    plot         SVG or HTML figure
    batch        check battery over --count generated instances -> CSV

JSON goes to --output or stdout; "-" means stdin / stdout. Exit codes:
0 success or true, 1 false or a failed check, 2 usage or validation error.
"""

import argparse
import logging
import sys
import time
from typing import Any, Callable, Dict, List, Optional, Sequence, Union

import pandas as pd

from .config.settings import (
    get_check_config,
    get_gen_config,
    get_logging_config,
    get_plot_config,
    load_config,
)
from .core.checker import MODES, CheckRunner, failed_checks
from .core.geometry import Point3, is_convex_position
from .core.nets import (
    ColoredPoints,
    NetInstance,
    NetSearch,
    discrepancy,
    verify_weak_eps_net,
)
from .core.planar import approx_convex_subset_3d, approx_with_retries
from .core.reduction import DiskInstance, ReductionOutput, build_reduction
from .core.solvers import (
    ConvexSubsetSearch,
    TangencyGraph,
    max_independent_set,
)
from .data.formats import (
    format_rational,
    parse_any,
    parse_instance,
    parse_rational,
    read_text,
    serialize_instance,
    serialize_points,
    serialize_report,
    write_text,
)
from .data.generator import generate_instance
from .plot.figures import format_for_path, render
from .utils.logging import setup_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2


def _points_json(points: Sequence[Point3]) -> List[List[str]]:
    return [[format_rational(p.x), format_rational(p.y), format_rational(p.z)] for p in points]


def _as_reduction(obj: Union[DiskInstance, ReductionOutput]) -> ReductionOutput:
    if isinstance(obj, DiskInstance):
        return build_reduction(obj)
    return obj


def _parse_direction(text: str) -> Point3:
    parts = [t.strip() for t in text.split(",")]
    if len(parts) != 3:
        raise ValueError(f"--direction needs three comma-separated rationals, got {text!r}")
    return Point3(*(parse_rational(t) for t in parts))


class _Run:
    """Shared state of one CLI invocation."""

    def __init__(self, args: argparse.Namespace) -> None:
        self.args = args
        self.config = load_config(args.config)
        self.timings = not args.no_timings

    def read(self) -> Union[DiskInstance, ReductionOutput]:
        return parse_any(read_text(self.args.input))

    def emit(self, doc: Dict[str, Any]) -> None:
        write_text(self.args.output, serialize_report(doc))

    def timed(self, doc: Dict[str, Any], start: float) -> Dict[str, Any]:
        if self.timings:
            doc["wall_time"] = round(time.perf_counter() - start, 6)
        return doc


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_gen(run: _Run) -> int:
    args = run.args
    density = args.density or get_gen_config(run.config)["density"]
    instance = generate_instance(args.seed, args.n, density)
    logger.info(f"Generated {len(instance)} disks with seed {args.seed}")
    write_text(args.output, serialize_instance(instance))
    return EXIT_OK


def cmd_reduce(run: _Run) -> int:
    instance = parse_instance(read_text(run.args.input))
    output = build_reduction(instance)
    logger.info(f"Reduced {len(instance)} disks to {len(output.points)} points")
    write_text(run.args.output, serialize_points(output))
    return EXIT_OK


def cmd_solve(run: _Run) -> int:
    args = run.args
    if args.k is not None and args.k < 0:
        raise ValueError(f"--k must be non-negative, got {args.k}")
    obj = run.read()
    start = time.perf_counter()
    doc: Dict[str, Any] = {"problem": args.problem}

    if args.problem == "mis":
        if not isinstance(obj, DiskInstance):
            raise ValueError("problem mis needs an instance file, got a points file")
        result = max_independent_set(TangencyGraph.from_instance(obj))
        witness: Any = [v + 1 for v in result.witness]
    else:
        points = _as_reduction(obj).points
        search = ConvexSubsetSearch(points, empty=args.problem == "lecs")
        # with k the search stops at the first witness of size k
        result = search.run(target=args.k)
        witness = _points_json(result.witness)

    if args.k is None:
        doc.update({"size": result.size, "witness": witness})
    else:
        decision = result.size >= args.k
        doc.update({"k": args.k, "decision": decision, "witness": witness if decision else None})
    doc["explored"] = result.explored
    run.emit(run.timed(doc, start))
    if args.k is not None and not doc["decision"]:
        return EXIT_FALSE
    return EXIT_OK


def _check_config(run: _Run) -> Dict[str, Any]:
    check_config = get_check_config(run.config)
    if run.args.cap is not None:
        if run.args.cap < 1:
            raise ValueError(f"--cap must be positive, got {run.args.cap}")
        check_config["cap"] = run.args.cap
    return check_config


def cmd_check(run: _Run) -> int:
    args = run.args
    check_config = _check_config(run)
    output = _as_reduction(run.read())
    runner = CheckRunner(output, args.mode, check_config, sample=args.sample)
    report = runner.run(timings=run.timings)
    run.emit(report)
    return EXIT_OK if report["passed"] else EXIT_FALSE


def cmd_net(run: _Run) -> int:
    args = run.args
    eps = parse_rational(args.eps)
    output = _as_reduction(run.read())
    instance = NetInstance(output.lifted, output.blocking_points, eps)
    search = NetSearch(instance.ground, instance.net)
    start = time.perf_counter()
    verdict = verify_weak_eps_net(instance, search)
    doc: Dict[str, Any] = {
        "epsilon": format_rational(instance.epsilon),
        "threshold": instance.threshold,
        "is_net": verdict.is_net,
        "violation": None if verdict.violation is None else _points_json(verdict.violation),
        "max_avoiding_size": search.largest().size,
    }
    run.emit(run.timed(doc, start))
    return EXIT_OK if verdict.is_net else EXIT_FALSE


def cmd_discrepancy(run: _Run) -> int:
    output = _as_reduction(run.read())
    start = time.perf_counter()
    result = discrepancy(ColoredPoints(output.lifted, output.blocking_points))
    doc = {
        "discrepancy": result.size,
        "witness": _points_json(result.witness),
        "explored": result.explored,
    }
    run.emit(run.timed(doc, start))
    return EXIT_OK


def cmd_approx(run: _Run) -> int:
    args = run.args
    points = list(_as_reduction(run.read()).points)
    start = time.perf_counter()
    if args.direction:
        direction = _parse_direction(args.direction)
        result = approx_convex_subset_3d(points, direction)
    else:
        result, direction = approx_with_retries(points)
    doc = {
        "direction": [format_rational(c) for c in (direction.x, direction.y, direction.z)],
        "size": result.size,
        "witness": _points_json(result.witness),
        "convex_position": is_convex_position(result.witness),
    }
    run.emit(run.timed(doc, start))
    return EXIT_OK


def cmd_plot(run: _Run) -> int:
    args = run.args
    fmt = format_for_path(args.output)
    text = render(run.read(), fmt, get_plot_config(run.config))
    write_text(args.output, text)
    return EXIT_OK


def cmd_batch(run: _Run) -> int:
    args = run.args
    if args.count < 1:
        raise ValueError(f"--count must be positive, got {args.count}")
    check_config = _check_config(run)
    density = args.density or get_gen_config(run.config)["density"]

    rows = []
    for offset in range(args.count):
        seed = args.seed + offset
        output = build_reduction(generate_instance(seed, args.n, density))
        row: Dict[str, Any] = {
            "seed": seed,
            "L_size": len(output.lifted),
            "B_size": len(output.blocking),
        }
        if len(output.points) > check_config["cap"]:
            logger.warning(f"seed {seed}: {len(output.points)} points exceed the cap, skipped")
            row["status"] = "skipped"
            rows.append(row)
            continue
        report = CheckRunner(output, args.mode, check_config).run(timings=run.timings)
        for key in ("mis_size", "es_size", "lecs_size", "discrepancy"):
            row[key] = report[key]
        failed = failed_checks(report)
        row["status"] = "passed" if not failed else "failed"
        row["failed_checks"] = ";".join(failed)
        if run.timings:
            row["seconds"] = round(sum(report["wall_times"].values()), 6)
        rows.append(row)

    frame = pd.DataFrame(rows)
    write_text(args.output, frame.to_csv(index=False))
    n_failed = int((frame["status"] == "failed").sum())
    n_skipped = int((frame["status"] == "skipped").sum())
    logger.info(f"Batch of {len(frame)}: {n_failed} failed, {n_skipped} skipped")
    return EXIT_FALSE if n_failed else EXIT_OK


COMMANDS: Dict[str, Callable[[_Run], int]] = {
    "gen": cmd_gen,
    "reduce": cmd_reduce,
    "solve": cmd_solve,
    "check": cmd_check,
    "net": cmd_net,
    "discrepancy": cmd_discrepancy,
    "approx": cmd_approx,
    "plot": cmd_plot,
    "batch": cmd_batch,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=str, help="Path to JSON config file")
    common.add_argument(
        "--log-level",
        type=str,
        default=None,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Logging level (default: from config, INFO)",
    )
    common.add_argument("--log-file", type=str, help="Path to log file (optional)")
    common.add_argument(
        "--no-timings",
        action="store_true",
        help="Omit wall times so repeated runs give identical output",
    )

    parser = argparse.ArgumentParser(
        prog="convexhard",
        description="Exact toolkit for the unit-disk to convex-position reduction",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str, io: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        if io:
            p.add_argument("--input", type=str, default="-", help="Input file ('-' = stdin)")
        p.add_argument("--output", type=str, default="-", help="Output file ('-' = stdout)")
        return p

    p = add("gen", "Generate a seeded lattice instance", io=False)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, required=True, help="Number of disks")
    p.add_argument("--density", type=str, help="Fraction of occupied cells, e.g. 1/2")

    add("reduce", "Build the point set P = L + B")

    p = add("solve", "Solve MIS, ES or LECS exactly")
    p.add_argument("--problem", choices=["mis", "es", "lecs"], required=True)
    p.add_argument("--k", type=int, help="Decide whether the optimum is at least k")

    p = add("check", "Run the check battery")
    p.add_argument("--mode", choices=MODES, default="all")
    p.add_argument("--cap", type=int, help="Largest |L| + |B| for exhaustive checks")
    p.add_argument("--sample", action="store_true", help="Sample oversized subset scans")

    p = add("net", "Verify B as a weak epsilon-net for L")
    p.add_argument("--eps", type=str, required=True, help="Epsilon as p/q")

    add("discrepancy", "Red (L) / blue (B) discrepancy over convex ranges")

    p = add("approx", "Projection approximation of the largest convex subset")
    p.add_argument("--direction", type=str, help="Projection direction 'a,b,c'")

    add("plot", "Draw an instance or point set (.svg or .html)")

    p = add("batch", "Check battery over generated instances, CSV out", io=False)
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--seed", type=int, default=0, help="Seed of the first instance")
    p.add_argument("--n", type=int, default=8, help="Disks per instance")
    p.add_argument("--density", type=str)
    p.add_argument("--mode", choices=MODES, default="all")
    p.add_argument("--cap", type=int)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and return its exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        run = _Run(args)
        log_config = get_logging_config(run.config)
        setup_logging(
            level=args.log_level or log_config.get("level", "INFO"),
            log_file=args.log_file,
            fmt=log_config.get("format"),
        )
        logger.debug(f"Running {args.command}")
        return COMMANDS[args.command](run)
    except (ValueError, OSError) as e:
        logger.error(f"{args.command}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
