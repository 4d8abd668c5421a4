"""Experiment harness: dataset, schedule, algorithm cells, report files."""

from __future__ import annotations

import csv
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path
from typing import Any

from .. import __version__
from ..constants import GAUSSIANS_NEIGHBORS, GAUSSIANS_SIGMA, IMAGE_NEIGHBORS, IMAGE_SIGMA
from ..datasets.gaussians import PointCloud, gen_gaussians
from ..datasets.image import gen_image_graph, image_point_cloud, load_image
from ..datasets.schedule_gen import gen_schedule
from ..graph.core import Graph, GraphError
from ..graph.edgelist import read_edge_list
from ..models.schemas import ExperimentConfig, SimilarityGraphConfig
from ..protocols.ledger import ProtocolRun
from ..protocols.runners import run_algorithm
from ..protocols.schedule import StreamSchedule
from ..settings import get_settings
from .config import ConfigError

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = ("algorithm", "tau", "comm_cumulative", "ncut")
VERSIONED_PACKAGES = ("numpy", "scipy", "scikit-learn", "scikit-image", "networkx", "pydantic")


@dataclass
class CellResult:
    """One algorithm on one schedule: a run or the error that stopped it."""

    algorithm: str
    run: ProtocolRun | None = None
    error: str | None = None


@dataclass
class ExperimentReport:
    """Files written by an experiment and any cell failures."""

    output_dir: Path
    cells: dict[str, list[CellResult]] = field(default_factory=dict)
    files: list[Path] = field(default_factory=list)
    errors: list[dict[str, Any]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors


def package_versions() -> dict[str, str]:
    versions = {"dyncluster": __version__}
    for name in VERSIONED_PACKAGES:
        try:
            versions[name] = version(name)
        except PackageNotFoundError:
            versions[name] = "unknown"
    return versions


def prepare_dataset(cfg: ExperimentConfig) -> tuple[PointCloud, Graph]:
    """Build or load the configured graph and the coordinates that order its stream.

    Raises:
        ConfigError: If the edge list does not fit the point file
    """
    spec = cfg.dataset
    if spec.kind == "gaussians":
        similarity = SimilarityGraphConfig(
            neighbors=spec.neighbors or GAUSSIANS_NEIGHBORS,
            sigma=spec.sigma or GAUSSIANS_SIGMA,
        )
        return gen_gaussians(cfg.seeds.dataset, similarity)

    if spec.kind == "image":
        assert spec.image is not None
        raster = load_image(spec.image)
        graph = gen_image_graph(
            raster,
            neighbors=spec.neighbors or IMAGE_NEIGHBORS,
            sigma=spec.sigma or IMAGE_SIGMA,
        )
        return image_point_cloud(raster), graph

    assert spec.edges is not None and spec.points is not None
    points = PointCloud.from_csv(spec.points)
    try:
        graph = read_edge_list(spec.edges, n=points.n)
    except GraphError as e:
        raise ConfigError(f"Edge list does not fit the {points.n} points: {e}") from e
    return points, graph


def run_cells(
    schedule: StreamSchedule, cfg: ExperimentConfig, threads: int | None = None
) -> list[CellResult]:
    """Run every configured algorithm on ``schedule``, in parallel when threads > 1.

    Failures are captured per cell; results come back in algorithm order.
    """
    sampler_cfg = cfg.sampler_config(schedule.n)
    workers = threads or get_settings().threads

    def cell(name: str) -> CellResult:
        try:
            run = run_algorithm(
                name,
                schedule,
                cfg.k,
                sampler_cfg,
                cluster_seed=cfg.seeds.clustering,
                cluster_every=cfg.cluster_every,
            )
        except Exception as e:
            logger.error(f"{name} failed: {e}")
            return CellResult(name, error=f"{type(e).__name__}: {e}")
        return CellResult(name, run=run)

    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(cell, cfg.algorithms))


def _write_cells(results: list[CellResult], directory: Path, report: ExperimentReport) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    for result in results:
        if result.run is not None:
            report.files.append(result.run.to_csv(directory / f"{result.algorithm}.csv"))


def _sweep_rows(value: int, results: list[CellResult]) -> list[list[object]]:
    rows: list[list[object]] = []
    for result in results:
        if result.run is None:
            continue
        for r in result.run.records:
            ncut = "" if r.ncut is None else repr(r.ncut)
            rows.append([value, result.algorithm, r.tau, r.comm_cumulative, ncut])
    return rows


def run_experiment(cfg: ExperimentConfig, threads: int | None = None) -> ExperimentReport:
    """Run a configured experiment and write its report directory.

    Writes ``<algorithm>.csv`` (``tau,comm_cumulative,ncut``) per algorithm,
    ``schedule.csv`` and ``summary.json``. With a sweep, each sweep point gets
    its own ``<parameter>=<value>/`` subdirectory and the points are
    collected in ``sweep_<parameter>.csv``. Failing cells are recorded in the
    summary and the remaining cells still write their outputs.

    Args:
        cfg: Validated experiment config
        threads: Worker threads; defaults to the DYNCLUSTER_THREADS setting

    Returns:
        Report listing written files and errors
    """
    out = cfg.output_dir
    out.mkdir(parents=True, exist_ok=True)
    report = ExperimentReport(output_dir=out)

    points, graph = prepare_dataset(cfg)
    logger.info(f"Experiment '{cfg.name}': n={graph.n}, m={graph.m}, algorithms={cfg.algorithms}")

    summary: dict[str, Any] = {
        "name": cfg.name,
        "config": cfg.model_dump(mode="json"),
        "dataset": {"kind": cfg.dataset.kind, "n": graph.n, "m": graph.m},
        "seeds": cfg.seeds.model_dump(),
        "versions": package_versions(),
    }

    if cfg.sweep is None:
        schedule = gen_schedule(graph, points, cfg.t, cfg.s, cfg.seeds.schedule, cfg.delete_frac)
        report.files.append(schedule.to_csv(out / "schedule.csv"))
        results = run_cells(schedule, cfg, threads)
        report.cells["baseline"] = results
        _write_cells(results, out, report)
        summary["schedule"] = {"inserts": schedule.insert_count, "deletes": schedule.delete_count}
        summary["runs"] = [r.run.summary() for r in results if r.run is not None]
        report.errors.extend(
            {"algorithm": r.algorithm, "error": r.error} for r in results if r.error
        )
    else:
        param = cfg.sweep.parameter
        sweep_path = out / f"sweep_{param}.csv"
        points_summary = []
        with sweep_path.open("w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            writer.writerow((param, *SWEEP_COLUMNS))
            for value in cfg.sweep.values:
                point_cfg = cfg.model_copy(update={param: value})
                schedule = gen_schedule(
                    graph, points, point_cfg.t, point_cfg.s, cfg.seeds.schedule, cfg.delete_frac
                )
                results = run_cells(schedule, point_cfg, threads)
                report.cells[f"{param}={value}"] = results
                _write_cells(results, out / f"{param}={value}", report)
                writer.writerows(_sweep_rows(value, results))
                points_summary.append(
                    {
                        param: value,
                        "runs": [r.run.summary() for r in results if r.run is not None],
                    }
                )
                report.errors.extend(
                    {"algorithm": r.algorithm, param: value, "error": r.error}
                    for r in results
                    if r.error
                )
                logger.info(f"Sweep point {param}={value} done")
        report.files.append(sweep_path)
        summary["sweep"] = {"parameter": param, "points": points_summary}

    summary["errors"] = report.errors
    summary["timestamp"] = datetime.now(timezone.utc).isoformat()
    summary_path = out / "summary.json"
    summary_path.write_text(json.dumps(summary, indent=2), encoding="utf-8")
    report.files.append(summary_path)

    if report.errors:
        logger.error(f"Experiment '{cfg.name}' finished with {len(report.errors)} failed cells")
    else:
        logger.info(f"Experiment '{cfg.name}' finished; outputs in {out}")
    return report
