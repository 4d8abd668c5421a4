"""Append-only greedy (2k-1)-spanners and distance queries over their union."""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable
from typing import NamedTuple

import networkx as nx

from ..graph.core import Graph, GraphError, WeightedEdge
from ..sparsify.base import BaseMonotoneSketch

logger = logging.getLogger(__name__)


class DistanceAnswer(NamedTuple):
    """Spanner distance; ``connected`` is False and distance is inf for split pairs."""

    distance: float
    connected: bool


def _add_min_weight(g: nx.Graph, u: int, v: int, w: float) -> None:
    if g.has_edge(u, v):
        g[u][v]["weight"] = min(g[u][v]["weight"], w)
    else:
        g.add_edge(u, v, weight=w)


class SpannerState(BaseMonotoneSketch):
    """Greedy spanner with stretch ``2k - 1`` fed one edge at a time.

    An edge is kept only if the kept edges do not already connect its
    endpoints within ``(2k - 1) * w``. Kept edges are never removed.
    """

    def __init__(self, n: int, k: int) -> None:
        """Initialize an empty spanner.

        Args:
            n: Node count
            k: Stretch parameter, the kept graph is a (2k-1)-spanner

        Raises:
            ValueError: If k <= 1
        """
        if k <= 1:
            raise ValueError(f"Spanner stretch parameter must be > 1, got {k}")
        super().__init__(n)
        self.k = k
        self.stretch = 2 * k - 1
        self._kept: list[WeightedEdge] = []
        self._graph = nx.Graph()
        self._graph.add_nodes_from(range(n))

    @property
    def kept_count(self) -> int:
        return len(self._kept)

    def offer(self, edge: WeightedEdge) -> bool:
        """Keep ``edge`` iff its endpoints are farther apart than ``(2k-1) * w``.

        Ties are skipped.
        """
        if edge.v >= self._n:
            raise GraphError(f"Edge ({edge.u}, {edge.v}) outside spanner node range n={self._n}")
        bound = self.stretch * edge.w
        reachable = nx.single_source_dijkstra_path_length(
            self._graph, edge.u, cutoff=bound, weight="weight"
        )
        if edge.v in reachable:
            return False
        self._kept.append(edge)
        _add_min_weight(self._graph, edge.u, edge.v, edge.w)
        return True

    @property
    def size_ratio(self) -> float:
        """Kept edges over ``n^(1+1/k) * ln n``; 0 for graphs with fewer than 2 nodes."""
        if self._n < 2:
            return 0.0
        return self.kept_count / (self._n ** (1.0 + 1.0 / self.k) * math.log(self._n))

    def distance(self, u: int, v: int) -> float:
        """Current spanner distance, inf if disconnected."""
        return union_query([self], u, v).distance

    def kept_edges(self, start: int = 0) -> list[WeightedEdge]:
        return list(self._kept[start:])

    def to_graph(self) -> Graph:
        return Graph(self._n, self._kept)


def spanner_offer(st: SpannerState, e: WeightedEdge) -> bool:
    """Offer one edge to a spanner; returns whether it was kept."""
    return st.offer(e)


def union_graph(n: int, edges: Iterable[WeightedEdge]) -> nx.Graph:
    """networkx graph over ``0..n-1`` keeping the lightest copy of each pair."""
    g = nx.Graph()
    g.add_nodes_from(range(n))
    for e in edges:
        _add_min_weight(g, e.u, e.v, e.w)
    return g


def graph_distance(g: nx.Graph, u: int, v: int) -> DistanceAnswer:
    """Dijkstra distance in ``g``.

    Raises:
        GraphError: If a node is not in ``g``
    """
    if u not in g or v not in g:
        raise GraphError(f"Query ({u}, {v}) outside the node set")
    if u == v:
        return DistanceAnswer(0.0, True)
    try:
        return DistanceAnswer(float(nx.dijkstra_path_length(g, u, v, weight="weight")), True)
    except nx.NetworkXNoPath:
        return DistanceAnswer(math.inf, False)


def union_query(states: list[SpannerState], u: int, v: int) -> DistanceAnswer:
    """Shortest-path distance between ``u`` and ``v`` in the union of the spanners.

    Raises:
        GraphError: If the states disagree on n or a node is out of range
    """
    if not states:
        raise GraphError("union_query needs at least one spanner")
    n = states[0].n
    if any(st.n != n for st in states):
        raise GraphError("Spanners cover different node sets")
    edges = (e for st in states for e in st.kept_edges())
    return graph_distance(union_graph(n, edges), u, v)
