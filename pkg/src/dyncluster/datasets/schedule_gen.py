"""Distributed arrival schedules for a static graph."""

import logging
import math
import warnings

import numpy as np

from ..graph.core import Graph, WeightedEdge
from ..protocols.schedule import EventKind, StreamSchedule, UpdateEvent
from .gaussians import PointCloud

logger = logging.getLogger(__name__)


class EmptyBucketWarning(UserWarning):
    """Some time points receive no edges because t exceeds the edge count."""

    pass


def gen_schedule(
    g: Graph,
    points: PointCloud,
    t: int,
    s: int,
    seed: int,
    delete_frac: float = 0.0,
) -> StreamSchedule:
    """Stream the edges of ``g`` left to right across ``t`` time points and ``s`` sites.

    Edges are ordered by the smaller x coordinate of their endpoints and split
    into ``t`` buckets whose sizes differ by at most one (earlier buckets take
    the remainder). Each edge goes to a site drawn uniformly from ``[1, s]``.
    ``floor(delete_frac * m)`` edges, drawn without replacement among those
    arriving before ``t``, are deleted at their own site at a uniform time
    after arrival.

    Args:
        g: Graph whose edges are streamed
        points: Coordinates of g's nodes
        t: Number of time points
        s: Number of sites
        seed: Seed for sites and deletions
        delete_frac: Fraction of edges to delete, in [0, 1)

    Raises:
        ValueError: On bad t, s, delete_frac or a point cloud of the wrong size
    """
    if t < 1 or s < 1:
        raise ValueError(f"Need t >= 1 and s >= 1, got t={t}, s={s}")
    if not 0.0 <= delete_frac < 1.0:
        raise ValueError(f"delete_frac must lie in [0, 1), got {delete_frac}")
    if points.n != g.n:
        raise ValueError(f"Point cloud has {points.n} points but graph has {g.n} nodes")

    m = g.m
    if t > m:
        warnings.warn(
            f"t={t} exceeds the edge count m={m}; some time points are empty",
            EmptyBucketWarning,
        )

    x = points.x
    arrival_key = np.minimum(x[g.heads], x[g.tails])
    order = np.argsort(arrival_key, kind="stable")
    arrival = np.empty(m, dtype=np.int64)
    for tau, bucket in enumerate(np.array_split(order, t), start=1):
        arrival[bucket] = tau

    rng = np.random.default_rng(seed)
    sites = rng.integers(1, s + 1, size=m)

    heads, tails, weights = g.heads.tolist(), g.tails.tolist(), g.weights.tolist()
    events = [
        UpdateEvent(
            int(arrival[i]),
            int(sites[i]),
            EventKind.INSERT,
            WeightedEdge(heads[i], tails[i], weights[i]),
        )
        for i in order.tolist()
    ]

    n_delete = math.floor(delete_frac * m)
    if n_delete:
        eligible = np.flatnonzero(arrival < t)
        if n_delete > len(eligible):
            logger.warning(
                f"Only {len(eligible)} edges arrive before t={t}; "
                f"deleting those instead of {n_delete}"
            )
            n_delete = len(eligible)
        chosen = np.sort(rng.choice(eligible, size=n_delete, replace=False))
        when = rng.integers(arrival[chosen] + 1, t + 1)
        for i, tau in zip(chosen.tolist(), when.tolist()):
            edge = WeightedEdge(heads[i], tails[i], weights[i])
            events.append(UpdateEvent(int(tau), int(sites[i]), EventKind.DELETE, edge))

    schedule = StreamSchedule(g.n, t, s, events)
    logger.info(f"Generated schedule: {schedule!r}")
    return schedule
