"""Weighted undirected graphs and the Laplacian primitives built on them.

A ``Graph`` is a fixed node set ``0..n-1`` plus a multiset of positive weighted
edges. Parallel edges are stored as given and summed lazily whenever a matrix
is materialized, so appending to an edge set never rewrites earlier entries.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import scipy.linalg
import scipy.sparse
import scipy.sparse.linalg
from numpy.typing import ArrayLike, NDArray

from ..constants import DENSE_EIGEN_LIMIT, MIN_WEIGHT

logger = logging.getLogger(__name__)


class GraphError(ValueError):
    """Raised for invalid graphs, node sets or vectors."""

    pass


@dataclass(frozen=True, order=True)
class WeightedEdge:
    """Undirected weighted edge stored with ``u < v``."""

    u: int
    v: int
    w: float = 1.0

    def __post_init__(self) -> None:
        if self.u == self.v:
            raise GraphError(f"Self-loop on node {self.u} is not allowed")
        if self.u < 0 or self.v < 0:
            raise GraphError(f"Negative node index in edge ({self.u}, {self.v})")
        if not math.isfinite(self.w) or self.w < MIN_WEIGHT:
            raise GraphError(f"Edge weight {self.w!r} must be finite and >= {MIN_WEIGHT}")
        if self.u > self.v:
            u, v = self.v, self.u
            object.__setattr__(self, "u", u)
            object.__setattr__(self, "v", v)

    @property
    def endpoints(self) -> tuple[int, int]:
        """Canonical ``(u, v)`` pair."""
        return self.u, self.v


@dataclass(frozen=True)
class IncidenceRow:
    """A scaled incidence row ``coefficient * b(e)``.

    ``b(e)`` is +1 at the head ``u`` and -1 at the tail ``v``. The row's
    outer product contributes ``coefficient**2`` as an edge weight.
    """

    u: int
    v: int
    coefficient: float

    def __post_init__(self) -> None:
        if self.u == self.v:
            raise GraphError("Incidence row endpoints must differ")
        if not self.coefficient > 0:
            raise GraphError(f"Incidence coefficient must be positive, got {self.coefficient}")

    @property
    def weight(self) -> float:
        """Edge weight this row represents in the Laplacian."""
        return self.coefficient * self.coefficient


class Spectrum(NamedTuple):
    """Smallest normalized-Laplacian eigenpairs on the non-isolated nodes.

    ``vectors`` has one row per node selected by ``mask``.
    """

    values: NDArray[np.float64]
    vectors: NDArray[np.float64]
    mask: NDArray[np.bool_]


class Graph:
    """Immutable weighted undirected multigraph on nodes ``0..n-1``."""

    __slots__ = ("_n", "_u", "_v", "_w", "_adjacency")

    def __init__(self, n: int, edges: Iterable[WeightedEdge] = ()) -> None:
        """Build a graph from edge objects.

        Args:
            n: Node count, fixed for the instance
            edges: Edges with endpoints in ``[0, n)``

        Raises:
            GraphError: If an endpoint is out of range
        """
        edge_list = list(edges)
        self._init_arrays(
            n,
            np.fromiter((e.u for e in edge_list), dtype=np.int64, count=len(edge_list)),
            np.fromiter((e.v for e in edge_list), dtype=np.int64, count=len(edge_list)),
            np.fromiter((e.w for e in edge_list), dtype=np.float64, count=len(edge_list)),
        )

    def _init_arrays(
        self, n: int, u: NDArray[np.int64], v: NDArray[np.int64], w: NDArray[np.float64]
    ) -> None:
        if n < 0:
            raise GraphError(f"Node count must be non-negative, got {n}")
        if len(u):
            hi = max(int(u.max()), int(v.max()))
            if hi >= n or min(int(u.min()), int(v.min())) < 0:
                raise GraphError(f"Edge endpoint {hi} out of range for n={n}")
        if not np.all(np.isfinite(w)):
            raise GraphError("Edge weights must be finite")
        u.setflags(write=False)
        v.setflags(write=False)
        w.setflags(write=False)
        self._n = int(n)
        self._u = u
        self._v = v
        self._w = w
        self._adjacency: scipy.sparse.csr_matrix | None = None

    @classmethod
    def from_arrays(cls, n: int, u: ArrayLike, v: ArrayLike, w: ArrayLike) -> Graph:
        """Build a graph from parallel endpoint and weight arrays.

        Raises:
            GraphError: On self-loops, weights below the floor or bad endpoints
        """
        ua = np.asarray(u, dtype=np.int64).ravel()
        va = np.asarray(v, dtype=np.int64).ravel()
        wa = np.asarray(w, dtype=np.float64).ravel()
        if not (len(ua) == len(va) == len(wa)):
            raise GraphError("Endpoint and weight arrays must have equal length")
        if np.any(ua == va):
            raise GraphError("Self-loops are not allowed")
        if np.any(~(wa >= MIN_WEIGHT)):
            raise GraphError(f"Edge weights must be >= {MIN_WEIGHT}")
        lo = np.minimum(ua, va)
        hi = np.maximum(ua, va)
        graph = cls.__new__(cls)
        graph._init_arrays(n, lo.copy(), hi.copy(), wa.copy())
        return graph

    @classmethod
    def empty(cls, n: int) -> Graph:
        """Graph on n nodes without edges."""
        return cls.from_arrays(n, [], [], [])

    @classmethod
    def union(cls, n: int, graphs: Iterable[Graph]) -> Graph:
        """Multiset union of graphs over the same node set."""
        parts = list(graphs)
        for g in parts:
            if g.n != n:
                raise GraphError(f"Cannot union a graph on {g.n} nodes into n={n}")
        if not parts:
            return cls.empty(n)
        return cls.from_arrays(
            n,
            np.concatenate([g._u for g in parts]),
            np.concatenate([g._v for g in parts]),
            np.concatenate([g._w for g in parts]),
        )

    @property
    def n(self) -> int:
        """Node count."""
        return self._n

    @property
    def m(self) -> int:
        """Edge count, parallel edges counted separately."""
        return len(self._w)

    @property
    def heads(self) -> NDArray[np.int64]:
        return self._u

    @property
    def tails(self) -> NDArray[np.int64]:
        return self._v

    @property
    def weights(self) -> NDArray[np.float64]:
        return self._w

    @property
    def total_weight(self) -> float:
        return float(self._w.sum())

    def edges(self) -> Iterator[WeightedEdge]:
        """Iterate edges in storage order."""
        for u, v, w in zip(self._u.tolist(), self._v.tolist(), self._w.tolist()):
            yield WeightedEdge(u, v, w)

    def degrees(self) -> NDArray[np.float64]:
        """Weighted degree of every node."""
        deg = np.bincount(self._u, weights=self._w, minlength=self._n)
        deg += np.bincount(self._v, weights=self._w, minlength=self._n)
        return deg

    def active_mask(self) -> NDArray[np.bool_]:
        """Mask of non-isolated nodes."""
        return self.degrees() > 0

    def adjacency(self) -> scipy.sparse.csr_matrix:
        """Symmetric adjacency matrix with parallel edges summed."""
        if self._adjacency is None:
            rows = np.concatenate([self._u, self._v])
            cols = np.concatenate([self._v, self._u])
            data = np.concatenate([self._w, self._w])
            self._adjacency = scipy.sparse.csr_matrix(
                (data, (rows, cols)), shape=(self._n, self._n)
            )
        return self._adjacency

    def laplacian(self) -> scipy.sparse.csr_matrix:
        """Combinatorial Laplacian ``D - A``."""
        return scipy.sparse.diags(self.degrees()).tocsr() - self.adjacency()

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self.m})"


def _node_array(g: Graph, s: Iterable[int]) -> NDArray[np.int64]:
    nodes = np.unique(np.fromiter((int(x) for x in s), dtype=np.int64))
    if len(nodes) and (nodes[0] < 0 or nodes[-1] >= g.n):
        raise GraphError(f"Node set has indices outside [0, {g.n})")
    return nodes


def quadratic_form(g: Graph, x: ArrayLike) -> float:
    """Return ``x^T L x = sum_e w_e (x_u - x_v)^2``.

    Raises:
        GraphError: If ``len(x) != n``
    """
    xa = np.asarray(x, dtype=np.float64)
    if xa.shape != (g.n,):
        raise GraphError(f"Vector of shape {xa.shape} does not match n={g.n}")
    diff = xa[g.heads] - xa[g.tails]
    return float(np.dot(g.weights, diff * diff))


def volume(g: Graph, s: Iterable[int]) -> float:
    """Sum of weighted degrees of the nodes in ``s``."""
    nodes = _node_array(g, s)
    return float(g.degrees()[nodes].sum())


def cut_weight(g: Graph, s: Iterable[int]) -> float:
    """Total weight of edges with exactly one endpoint in ``s``."""
    nodes = _node_array(g, s)
    inside = np.zeros(g.n, dtype=bool)
    inside[nodes] = True
    crossing = inside[g.heads] != inside[g.tails]
    return float(g.weights[crossing].sum())


def conductance(g: Graph, s: Iterable[int]) -> float:
    """Crossing weight of ``s`` divided by its volume.

    Raises:
        GraphError: If ``vol(s) == 0``
    """
    nodes = _node_array(g, s)
    vol = volume(g, nodes)
    if vol <= 0:
        raise GraphError("Conductance is undefined for a zero-volume set")
    return cut_weight(g, nodes) / vol


def normalized_laplacian(g: Graph) -> tuple[scipy.sparse.csr_matrix, NDArray[np.bool_]]:
    """``I - D^{-1/2} A D^{-1/2}`` on the non-isolated induced subgraph."""
    mask = g.active_mask()
    deg = g.degrees()[mask]
    adj = g.adjacency()[mask][:, mask]
    inv_sqrt = scipy.sparse.diags(1.0 / np.sqrt(deg))
    size = int(mask.sum())
    lap = scipy.sparse.identity(size, format="csr") - inv_sqrt @ adj @ inv_sqrt
    return lap.tocsr(), mask


def normalized_laplacian_spectrum(g: Graph, k: int) -> Spectrum:
    """The k smallest eigenpairs of the normalized Laplacian.

    Isolated nodes are excluded; the returned mask says which nodes the
    eigenvector rows belong to.

    Raises:
        GraphError: If k exceeds the number of non-isolated nodes
    """
    lap, mask = normalized_laplacian(g)
    size = lap.shape[0]
    if k < 1 or k > size:
        raise GraphError(f"Requested {k} eigenvalues but graph has {size} non-isolated nodes")

    if size <= DENSE_EIGEN_LIMIT or k >= size - 1:
        values, vectors = scipy.linalg.eigh(lap.toarray(), subset_by_index=[0, k - 1])
    else:
        # Largest eigenpairs of 2I - L converge faster than smallest of L
        shifted = 2.0 * scipy.sparse.identity(size, format="csr") - lap
        mu, vectors = scipy.sparse.linalg.eigsh(shifted, k=k, which="LA")
        values = 2.0 - mu
        order = np.argsort(values)
        values, vectors = values[order], vectors[:, order]

    values = np.clip(values, 0.0, 2.0)
    return Spectrum(values=values, vectors=vectors, mask=mask)


def normalized_laplacian_eigenvalues(g: Graph, k: int) -> NDArray[np.float64]:
    """The k smallest normalized-Laplacian eigenvalues, ascending."""
    return normalized_laplacian_spectrum(g, k).values
