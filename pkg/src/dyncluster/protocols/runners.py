"""The five distributed clustering protocols and the deletion policy.

Every runner walks the schedule one time point at a time, charges the
edges that reach the coordinator (or the blackboard) to a ``CommLedger``,
clusters the coordinator's graph and scores the labels against the true
current graph.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterator
from dataclasses import replace
from typing import Protocol

import numpy as np

from ..clustering.metrics import ncut_or_none
from ..clustering.partition import ClusteringError, Partition
from ..clustering.spectral import spectral_cluster
from ..graph.core import Graph, WeightedEdge
from ..models.schemas import AlgorithmName, SamplerConfig
from ..sparsify.base import MonotoneSketch
from ..sparsify.online_sampler import OnlineSampler
from .ledger import CommLedger, ProtocolRun, TimeRecord
from .schedule import ScheduleError, StreamSchedule

logger = logging.getLogger(__name__)

SketchFactory = Callable[[int], MonotoneSketch]


class ProtocolRunner(Protocol):
    """Uniform call signature shared by every registered algorithm."""

    def __call__(
        self,
        schedule: StreamSchedule,
        k: int,
        sampler_cfg: SamplerConfig | None = None,
        *,
        cluster_seed: int = 0,
        cluster_every: int = 1,
    ) -> ProtocolRun: ...


def derive_seed(base: int, *keys: int) -> int:
    """Independent 64-bit seed for a (base, key...) tuple."""
    hi, lo = np.random.SeedSequence([base, *keys]).generate_state(2, dtype=np.uint32)
    return (int(hi) << 32) | int(lo)


def _clustering_due(tau: int, t: int, every: int) -> bool:
    return tau == t or tau % every == 0


def _time_record(
    tau: int,
    ledger: CommLedger,
    coordinator: Graph,
    truth: Graph,
    k: int,
    seed: int,
    due: bool,
) -> TimeRecord:
    partition: Partition | None = None
    value: float | None = None
    if due:
        try:
            partition = spectral_cluster(coordinator, k, seed)
        except ClusteringError as e:
            logger.debug(f"No clustering at tau={tau}: {e}")
        else:
            value = ncut_or_none(truth, partition)
    return TimeRecord(
        tau=tau,
        comm_cumulative=ledger.total,
        ncut=value,
        partition=partition,
        sketch_edges=coordinator.m,
    )


def _check_sampler(schedule: StreamSchedule, cfg: SamplerConfig | None) -> SamplerConfig:
    if cfg is None:
        raise ValueError("This algorithm needs a sampler configuration")
    if cfg.n != schedule.n:
        raise ScheduleError(f"Sampler is sized for n={cfg.n} but schedule has n={schedule.n}")
    return cfg


def message_passing_rounds(
    schedule: StreamSchedule, factory: SketchFactory
) -> Iterator[tuple[int, list[WeightedEdge], list[MonotoneSketch]]]:
    """Drive one monotone sketch per site through the schedule.

    Deletions never reach the sketches. After each time point every site sends
    the edges its sketch appended during that time point.

    Yields:
        ``(tau, edges sent during tau, per-site sketches)``
    """
    sketches = [factory(site) for site in range(1, schedule.s + 1)]
    marks = [0] * schedule.s
    for tau in range(1, schedule.t + 1):
        for event in schedule.events_at(tau):
            if event.is_insert:
                sketches[event.site - 1].offer(event.edge)
        sent: list[WeightedEdge] = []
        for i, sketch in enumerate(sketches):
            sent.extend(sketch.kept_edges(marks[i]))
            marks[i] = sketch.kept_count
        yield tau, sent, sketches


def blackboard_rounds(
    schedule: StreamSchedule, sketch: MonotoneSketch
) -> Iterator[tuple[int, int]]:
    """Feed every site's inserts into one shared sketch.

    Sites post in index order inside a time point. Reading the board is free;
    each appended edge is one broadcast.

    Yields:
        ``(tau, edges appended during tau)``
    """
    for tau in range(1, schedule.t + 1):
        before = sketch.kept_count
        for event in schedule.events_at(tau):
            if event.is_insert:
                sketch.offer(event.edge)
        yield tau, sketch.kept_count - before


def run_cntrl(
    schedule: StreamSchedule,
    k: int,
    sampler_cfg: SamplerConfig | None = None,
    *,
    cluster_seed: int = 0,
    cluster_every: int = 1,
    forward_deletions: bool = True,
) -> ProtocolRun:
    """Centralize every update and cluster the exact current graph."""
    ledger = CommLedger("cntrl")
    records = []
    graph = Graph.empty(schedule.n)
    for tau, graph in schedule.live_graphs():
        sent = schedule.inserts_at(tau)
        if forward_deletions:
            sent += schedule.deletes_at(tau)
        ledger.close_time_point(sent)
        due = _clustering_due(tau, schedule.t, cluster_every)
        records.append(_time_record(tau, ledger, graph, graph, k, cluster_seed, due))
        logger.debug(f"cntrl tau={tau} comm={ledger.total}")

    logger.info(f"cntrl finished: comm={ledger.total}")
    return ProtocolRun("cntrl", k, records, ledger, graph, None, cluster_seed, cluster_every)


def run_d2camp(
    schedule: StreamSchedule,
    k: int,
    sampler_cfg: SamplerConfig | None = None,
    *,
    cluster_seed: int = 0,
    cluster_every: int = 1,
    sketch_factory: SketchFactory | None = None,
) -> ProtocolRun:
    """Message passing: each site keeps a monotone sparsifier and sends its new rows.

    The coordinator clusters the union of everything received.

    Args:
        schedule: Update stream
        k: Cluster count
        sampler_cfg: Base sampler parameters; site i's sampler is seeded with
            ``derive_seed(seed, i)``
        cluster_seed: k-means seed
        cluster_every: Cluster every this many time points (and at the last)
        sketch_factory: Replaces the per-site sampler with any monotone sketch
    """
    cfg = _check_sampler(schedule, sampler_cfg)
    factory: SketchFactory = sketch_factory or (
        lambda site: OnlineSampler(cfg.with_seed(derive_seed(cfg.seed, site)))
    )

    ledger = CommLedger("d2camp")
    records = []
    received: list[WeightedEdge] = []
    coordinator = Graph.empty(schedule.n)
    rounds = message_passing_rounds(schedule, factory)
    for (tau, sent, _), (_, truth) in zip(rounds, schedule.live_graphs()):
        ledger.close_time_point(len(sent))
        received.extend(sent)
        coordinator = Graph(schedule.n, received)
        due = _clustering_due(tau, schedule.t, cluster_every)
        records.append(_time_record(tau, ledger, coordinator, truth, k, cluster_seed, due))
        logger.debug(f"d2camp tau={tau} sent={len(sent)} comm={ledger.total}")

    logger.info(f"d2camp finished: comm={ledger.total}")
    return ProtocolRun("d2camp", k, records, ledger, coordinator, cfg, cluster_seed, cluster_every)


def run_d2cabl(
    schedule: StreamSchedule,
    k: int,
    sampler_cfg: SamplerConfig | None = None,
    *,
    cluster_seed: int = 0,
    cluster_every: int = 1,
) -> ProtocolRun:
    """Blackboard: all sites grow one shared sparsifier; each kept row costs one message."""
    cfg = _check_sampler(schedule, sampler_cfg)
    board = OnlineSampler(cfg)
    ledger = CommLedger("d2cabl")
    records = []
    coordinator = Graph.empty(schedule.n)
    for (tau, appended), (_, truth) in zip(
        blackboard_rounds(schedule, board), schedule.live_graphs()
    ):
        ledger.close_time_point(appended)
        coordinator = board.to_graph()
        due = _clustering_due(tau, schedule.t, cluster_every)
        records.append(_time_record(tau, ledger, coordinator, truth, k, cluster_seed, due))
        logger.debug(f"d2cabl tau={tau} appended={appended} comm={ledger.total}")

    logger.info(f"d2cabl finished: comm={ledger.total}")
    return ProtocolRun("d2cabl", k, records, ledger, coordinator, cfg, cluster_seed, cluster_every)


def _fresh_sparsifier(cfg: SamplerConfig, seed: int, edges: list[WeightedEdge]) -> Graph:
    sampler = OnlineSampler(cfg.with_seed(seed))
    sampler.offer_many(edges)
    return sampler.to_graph()


def run_stmp(
    schedule: StreamSchedule,
    k: int,
    sampler_cfg: SamplerConfig | None = None,
    *,
    cluster_seed: int = 0,
    cluster_every: int = 1,
) -> ProtocolRun:
    """Static message passing rebuilt per time point.

    Every site sparsifies its whole current local graph from scratch with a
    fresh sampler seeded ``derive_seed(seed, tau, site)`` and sends all of it.
    """
    cfg = _check_sampler(schedule, sampler_cfg)
    ledger = CommLedger("stmp")
    records = []
    coordinator = Graph.empty(schedule.n)
    for tau, per_site in schedule.live_site_edges():
        parts = [
            _fresh_sparsifier(cfg, derive_seed(cfg.seed, tau, site), edges)
            for site, edges in enumerate(per_site, start=1)
        ]
        ledger.close_time_point(sum(p.m for p in parts))
        coordinator = Graph.union(schedule.n, parts)
        truth = Graph(schedule.n, (e for edges in per_site for e in edges))
        due = _clustering_due(tau, schedule.t, cluster_every)
        records.append(_time_record(tau, ledger, coordinator, truth, k, cluster_seed, due))
        logger.debug(f"stmp tau={tau} comm={ledger.total}")

    logger.info(f"stmp finished: comm={ledger.total}")
    return ProtocolRun("stmp", k, records, ledger, coordinator, cfg, cluster_seed, cluster_every)


def run_stbl(
    schedule: StreamSchedule,
    k: int,
    sampler_cfg: SamplerConfig | None = None,
    *,
    cluster_seed: int = 0,
    cluster_every: int = 1,
) -> ProtocolRun:
    """Static blackboard rebuilt per time point: one fresh shared sparsifier of G^tau."""
    cfg = _check_sampler(schedule, sampler_cfg)
    ledger = CommLedger("stbl")
    records = []
    coordinator = Graph.empty(schedule.n)
    for tau, per_site in schedule.live_site_edges():
        edges = [e for site_edges in per_site for e in site_edges]
        coordinator = _fresh_sparsifier(cfg, derive_seed(cfg.seed, tau, 0), edges)
        ledger.close_time_point(coordinator.m)
        truth = Graph(schedule.n, edges)
        due = _clustering_due(tau, schedule.t, cluster_every)
        records.append(_time_record(tau, ledger, coordinator, truth, k, cluster_seed, due))
        logger.debug(f"stbl tau={tau} comm={ledger.total}")

    logger.info(f"stbl finished: comm={ledger.total}")
    return ProtocolRun("stbl", k, records, ledger, coordinator, cfg, cluster_seed, cluster_every)


RUNNERS: dict[AlgorithmName, ProtocolRunner] = {
    "cntrl": run_cntrl,
    "d2camp": run_d2camp,
    "d2cabl": run_d2cabl,
    "stmp": run_stmp,
    "stbl": run_stbl,
}


def get_runner(name: str) -> ProtocolRunner:
    """Look up an algorithm by name.

    Raises:
        KeyError: If the name is not registered
    """
    try:
        return RUNNERS[name]  # type: ignore[index]
    except KeyError:
        raise KeyError(f"Unknown algorithm {name!r}; choose from {sorted(RUNNERS)}") from None


def run_algorithm(
    name: str,
    schedule: StreamSchedule,
    k: int,
    sampler_cfg: SamplerConfig | None = None,
    *,
    cluster_seed: int = 0,
    cluster_every: int = 1,
) -> ProtocolRun:
    runner = get_runner(name)
    return runner(
        schedule, k, sampler_cfg, cluster_seed=cluster_seed, cluster_every=cluster_every
    )


def apply_deletions_policy(run: ProtocolRun, schedule: StreamSchedule) -> ProtocolRun:
    """Bring a run onto a schedule that carries deletions.

    The monotone algorithms ignore deletions, so their ledgers and partitions
    stay as they are and only NCut is rescored against the true graphs with
    deletions applied. CNTRL forwards every deletion and the static rebuilds
    sparsify the current graphs, so those are rerun on ``schedule``.

    Args:
        run: Run produced on ``schedule`` or on ``schedule.without_deletions()``
        schedule: The schedule including deletions

    Raises:
        ScheduleError: If the run does not match the schedule's shape
    """
    if run.t != schedule.t or run.final_graph.n != schedule.n:
        raise ScheduleError(
            f"Run over t={run.t}, n={run.final_graph.n} does not match {schedule!r}"
        )
    if schedule.delete_count == 0:
        return run

    if run.algorithm in ("d2camp", "d2cabl"):
        records = [
            replace(
                record,
                ncut=None if record.partition is None else ncut_or_none(truth, record.partition),
            )
            for record, (_, truth) in zip(run.records, schedule.live_graphs())
        ]
        logger.info(
            f"{run.algorithm}: {schedule.delete_count} deletions ignored, ledger unchanged"
        )
        ledger = CommLedger(run.algorithm, list(run.ledger.cumulative))
        return replace(run, records=records, ledger=ledger)

    rerun = run_algorithm(
        run.algorithm,
        schedule,
        run.k,
        run.sampler_config,
        cluster_seed=run.cluster_seed,
        cluster_every=run.cluster_every,
    )
    logger.info(
        f"{run.algorithm}: rerun with {schedule.delete_count} deletions, "
        f"comm {run.final_comm} -> {rerun.final_comm}"
    )
    return rerun
