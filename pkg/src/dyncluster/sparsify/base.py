"""Monotone sketch interface shared by sparsifiers and spanners."""

from abc import ABC, abstractmethod
from typing import Protocol

from ..graph.core import Graph, WeightedEdge


class MonotoneSketch(Protocol):
    """An incremental sketch whose kept edge list only ever grows.

    Sites transmit ``kept_edges(mark)``: whatever was appended since the last
    transmission.
    """

    @property
    def n(self) -> int:
        """Node count of the sketched graph."""
        ...

    @property
    def kept_count(self) -> int:
        """Number of edges kept so far."""
        ...

    def offer(self, edge: WeightedEdge) -> object:
        """Offer one arriving edge to the sketch."""
        ...

    def kept_edges(self, start: int = 0) -> list[WeightedEdge]:
        """Kept edges from position ``start`` on, as transmitted weights."""
        ...

    def to_graph(self) -> Graph:
        """Materialize the kept edges as a graph."""
        ...


class BaseMonotoneSketch(ABC):
    """Base class for append-only sketches."""

    def __init__(self, n: int) -> None:
        self._n = n

    @property
    def n(self) -> int:
        return self._n

    @property
    @abstractmethod
    def kept_count(self) -> int:
        """Number of edges kept so far."""
        pass

    @abstractmethod
    def offer(self, edge: WeightedEdge) -> object:
        """Offer one edge."""
        pass

    @abstractmethod
    def kept_edges(self, start: int = 0) -> list[WeightedEdge]:
        """Kept edges from ``start`` on."""
        pass

    def to_graph(self) -> Graph:
        return Graph(self._n, self.kept_edges())
