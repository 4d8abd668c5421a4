"""Greedy graph spanners for distributed approximate distances."""

from .distributed import SpannerQueryRow, SpannerRun, read_queries, run_spanner
from .greedy import (
    DistanceAnswer,
    SpannerState,
    graph_distance,
    spanner_offer,
    union_graph,
    union_query,
)

__all__ = [
    "DistanceAnswer",
    "SpannerQueryRow",
    "SpannerRun",
    "SpannerState",
    "graph_distance",
    "read_queries",
    "run_spanner",
    "spanner_offer",
    "union_graph",
    "union_query",
]
