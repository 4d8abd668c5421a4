"""Command line entry point: gen, run, sweep, plotdata and spanner subcommands."""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

from pydantic import ValidationError

from . import __version__
from .datasets.gaussians import PointCloud, gen_gaussians
from .datasets.image import gen_image_graph, image_point_cloud, load_image
from .datasets.schedule_gen import gen_schedule
from .experiments.config import ConfigError, apply_overrides, load_config
from .experiments.plotdata import emit_plotdata
from .experiments.runner import run_experiment
from .graph.core import GraphError
from .graph.edgelist import read_edge_list, write_edge_list
from .logging_config import setup_logging
from .models.schemas import ALGORITHM_ORDER, ExperimentConfig, SimilarityGraphConfig, SweepSpec
from .protocols.schedule import ScheduleError, StreamSchedule
from .spanner.distributed import read_queries, run_spanner

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_RUNTIME = 2


def _add_overrides(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", required=True, type=Path, help="JSON or YAML experiment config")
    parser.add_argument("--algorithms", nargs="+", choices=ALGORITHM_ORDER)
    parser.add_argument("--t", type=int, help="Time points")
    parser.add_argument("--s", type=int, help="Sites")
    parser.add_argument("--k", type=int, help="Clusters")
    parser.add_argument("--epsilon", type=float)
    parser.add_argument("--delta", type=float)
    parser.add_argument("--oversampling", type=float)
    parser.add_argument("--delete-frac", type=float)
    parser.add_argument("--cluster-every", type=int)
    parser.add_argument("--seed", type=int, help="Set every named seed")
    parser.add_argument("--output-dir", type=Path)
    parser.add_argument("--threads", type=int, help="Overrides DYNCLUSTER_THREADS")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dyncluster",
        description="Communication-efficient clustering of distributed dynamic graphs",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--log-level", default="INFO", choices=["DEBUG", "INFO", "WARNING", "ERROR"]
    )
    parser.add_argument("--detailed-logs", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="Generate datasets and schedules")
    gen_sub = gen.add_subparsers(dest="dataset", required=True)

    gauss = gen_sub.add_parser("gaussians", help="Four-Gaussians similarity graph")
    gauss.add_argument("--seed", type=int, default=0)
    gauss.add_argument("--out", type=Path, required=True, help="Edge list destination")
    gauss.add_argument("--points", type=Path, help="Point CSV destination")
    gauss.add_argument("--neighbors", type=int, default=SimilarityGraphConfig().neighbors)
    gauss.add_argument("--sigma", type=float, default=SimilarityGraphConfig().sigma)

    img = gen_sub.add_parser("image", help="Pixel similarity graph of a PNG/PPM image")
    img.add_argument("--in", dest="image", type=Path, required=True)
    img.add_argument("--k", type=int, default=80, help="Nearest pixels per pixel")
    img.add_argument("--sigma", type=float, default=20.0)
    img.add_argument("--out", type=Path, required=True)
    img.add_argument("--points", type=Path, help="Pixel point CSV destination")

    sched = gen_sub.add_parser("schedule", help="Distributed arrival schedule for an edge list")
    sched.add_argument("--edges", type=Path, required=True)
    sched.add_argument("--points", type=Path, required=True)
    sched.add_argument("--t", type=int, required=True)
    sched.add_argument("--s", type=int, required=True)
    sched.add_argument("--seed", type=int, default=0)
    sched.add_argument("--delete-frac", type=float, default=0.0)
    sched.add_argument("--out", type=Path, required=True)

    run = sub.add_parser("run", help="Run an experiment config")
    _add_overrides(run)

    sweep = sub.add_parser("sweep", help="Run an experiment over several s or t values")
    _add_overrides(sweep)
    sweep.add_argument("--parameter", choices=["s", "t"])
    sweep.add_argument("--values", type=int, nargs="+")

    plot = sub.add_parser("plotdata", help="Emit series,tau,value CSVs from a report directory")
    plot.add_argument("--dir", type=Path, required=True)
    plot.add_argument("--out", type=Path)

    span = sub.add_parser("spanner", help="Distributed spanner distance queries")
    span.add_argument("--k", type=int, required=True, help="Stretch parameter (2k-1)")
    span.add_argument("--schedule", type=Path, required=True)
    span.add_argument("--queries", type=Path, required=True, help="File of u v pairs")
    span.add_argument("--out", type=Path, help="CSV destination, stdout by default")

    return parser


def _cmd_gen(args: argparse.Namespace) -> int:
    if args.dataset == "gaussians":
        similarity = SimilarityGraphConfig(neighbors=args.neighbors, sigma=args.sigma)
        cloud, graph = gen_gaussians(args.seed, similarity)
        write_edge_list(graph, args.out)
        if args.points:
            cloud.to_csv(args.points)
    elif args.dataset == "image":
        raster = load_image(args.image)
        graph = gen_image_graph(raster, neighbors=args.k, sigma=args.sigma)
        write_edge_list(graph, args.out)
        if args.points:
            image_point_cloud(raster).to_csv(args.points)
    else:
        points = PointCloud.from_csv(args.points)
        graph = read_edge_list(args.edges, n=points.n)
        schedule = gen_schedule(graph, points, args.t, args.s, args.seed, args.delete_frac)
        schedule.to_csv(args.out)
    return EXIT_OK


def _overridden_config(args: argparse.Namespace) -> ExperimentConfig:
    cfg = load_config(args.config)
    return apply_overrides(
        cfg,
        algorithms=args.algorithms,
        t=args.t,
        s=args.s,
        k=args.k,
        epsilon=args.epsilon,
        delta=args.delta,
        oversampling=args.oversampling,
        delete_frac=args.delete_frac,
        cluster_every=args.cluster_every,
        seed=args.seed,
        output_dir=args.output_dir,
    )


def _cmd_run(args: argparse.Namespace) -> int:
    if args.threads is not None and args.threads < 1:
        raise ConfigError(f"--threads must be >= 1, got {args.threads}")
    cfg = _overridden_config(args)
    if args.command == "sweep":
        if args.parameter and args.values:
            cfg = cfg.model_copy(
                update={"sweep": SweepSpec(parameter=args.parameter, values=args.values)}
            )
        elif args.parameter or args.values:
            raise ConfigError("--parameter and --values must be given together")
        if cfg.sweep is None:
            raise ConfigError("sweep needs a 'sweep' section in the config or --parameter/--values")
    report = run_experiment(cfg, threads=args.threads)
    return EXIT_OK if report.ok else EXIT_RUNTIME


def _cmd_plotdata(args: argparse.Namespace) -> int:
    try:
        emit_plotdata(args.dir, args.out)
    except ValueError as e:
        raise ConfigError(str(e)) from e
    return EXIT_OK


def _cmd_spanner(args: argparse.Namespace) -> int:
    if args.k <= 1:
        raise ConfigError(f"Spanner stretch parameter must be > 1, got {args.k}")
    schedule = StreamSchedule.from_csv(args.schedule)
    try:
        queries = read_queries(args.queries)
    except ValueError as e:
        raise ConfigError(str(e)) from e
    bad = [(u, v) for u, v in queries if not (0 <= u < schedule.n and 0 <= v < schedule.n)]
    if bad:
        raise ConfigError(f"Queries outside the {schedule.n} nodes: {bad[:5]}")
    result = run_spanner(schedule, args.k, queries)
    if args.out:
        with args.out.open("w", newline="", encoding="utf-8") as f:
            result.write_csv(f)
    else:
        result.write_csv(sys.stdout)
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    """Parse arguments, dispatch the subcommand and map failures to exit codes.

    Returns:
        0 on success, 1 for configuration or input errors, 2 for runtime failures
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.log_level, detailed=args.detailed_logs)

    try:
        if args.command == "gen":
            return _cmd_gen(args)
        if args.command in ("run", "sweep"):
            return _cmd_run(args)
        if args.command == "plotdata":
            return _cmd_plotdata(args)
        return _cmd_spanner(args)
    except (ConfigError, ValidationError, ScheduleError, GraphError, FileNotFoundError) as e:
        logger.error(f"{e}")
        return EXIT_CONFIG
    except Exception as e:
        logger.exception(f"{args.command} failed: {e}")
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
