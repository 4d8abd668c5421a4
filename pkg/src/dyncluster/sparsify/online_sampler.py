"""Online ridge-leverage row sampling with the monotonicity property.

Each offered edge ``e`` is scored against the rows kept so far,

    l = (1 + eps) * r(e)^T (B'^T B' + (delta/eps) I)^{-1} r(e),   r(e) = sqrt(w) b(e)

and kept with probability ``p = min(c * l, 1)`` as the row ``sqrt(w / p) b(e)``.
Kept rows are never removed or rewritten, so the sparsifier at any time is a
prefix of the sparsifier at every later time.

The inverse of the accumulator is maintained with Sherman-Morrison updates
restricted to the connected block the new row touches (the accumulator is
block diagonal over the kept graph's components), and recomputed from a
Cholesky factorization every ``refresh_every`` appended rows.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy.linalg
import scipy.sparse
import scipy.sparse.linalg
from numpy.typing import NDArray
from scipy.cluster.hierarchy import DisjointSet

from ..graph.core import Graph, GraphError, IncidenceRow, WeightedEdge
from ..models.schemas import SamplerConfig
from .base import BaseMonotoneSketch

logger = logging.getLogger(__name__)


class SamplerInvariantError(RuntimeError):
    """The accumulator stopped being symmetric positive definite."""

    pass


@dataclass(frozen=True)
class SampleDecision:
    """Outcome of one offer."""

    kept: bool
    probability: float
    scaled_weight: float


class OnlineSampler(BaseMonotoneSketch):
    """Append-only spectral sparsifier fed one edge at a time."""

    def __init__(self, config: SamplerConfig) -> None:
        """Initialize an empty sampler.

        Args:
            config: Sampler parameters; the seed fixes every sampling decision
        """
        super().__init__(config.n)
        self.config = config
        self._ridge = config.ridge
        self._c = config.c
        self._scale = 1.0 + config.epsilon

        self._rows: list[IncidenceRow] = []
        self._weights: list[float] = []
        self._probabilities: list[float] = []
        self._laplacian = scipy.sparse.dok_array((self._n, self._n), dtype=np.float64)
        self._inverse: NDArray[np.float64] = np.eye(self._n) / self._ridge
        self._components = DisjointSet(range(self._n))
        self._rng = np.random.Generator(np.random.Philox(config.seed))
        self._offers = 0
        self._since_refresh = 0

    @property
    def kept_count(self) -> int:
        return len(self._rows)

    @property
    def offers(self) -> int:
        return self._offers

    @property
    def rows(self) -> tuple[IncidenceRow, ...]:
        return tuple(self._rows)

    @property
    def probabilities(self) -> tuple[float, ...]:
        return tuple(self._probabilities)

    def gram(self) -> scipy.sparse.csr_matrix:
        """``B'^T B' + (delta/eps) I`` from the incremental accumulator."""
        ridge = scipy.sparse.identity(self._n, format="csr") * self._ridge
        return self._laplacian.tocsr() + ridge

    def ridge_leverage(self, edge: WeightedEdge, exact: bool = False) -> float:
        """Online ridge leverage score of ``edge`` against the kept rows.

        Args:
            edge: Edge to score; the sampler state is not changed
            exact: Solve against a fresh Cholesky factorization instead of
                reading the maintained inverse

        Raises:
            GraphError: If an endpoint is outside ``[0, n)``
            SamplerInvariantError: If the accumulator is not SPD
        """
        u, v = edge.u, edge.v
        if v >= self._n:
            raise GraphError(f"Edge ({u}, {v}) outside sampler node range n={self._n}")

        if exact:
            r = np.zeros(self._n)
            root = math.sqrt(edge.w)
            r[u], r[v] = root, -root
            try:
                factor = scipy.linalg.cho_factor(self.gram().toarray(), lower=True)
            except scipy.linalg.LinAlgError as e:
                raise SamplerInvariantError(f"Accumulator is not positive definite: {e}") from e
            quad = float(r @ scipy.linalg.cho_solve(factor, r))
        else:
            inv = self._inverse
            quad = edge.w * float(inv[u, u] + inv[v, v] - 2.0 * inv[u, v])

        if not quad > 0:
            raise SamplerInvariantError(f"Non-positive quadratic form {quad} for edge ({u}, {v})")
        return self._scale * quad

    def offer(self, edge: WeightedEdge) -> SampleDecision:
        """Score ``edge``, draw from the sampler's stream, and keep it or not.

        One uniform draw is consumed per offer whatever the probability, so
        decisions depend only on the seed and the offer sequence.
        """
        leverage = self.ridge_leverage(edge)
        probability = min(self._c * leverage, 1.0)
        draw = self._rng.random()
        self._offers += 1

        if draw >= probability:
            return SampleDecision(kept=False, probability=probability, scaled_weight=0.0)

        scaled = edge.w / probability
        self._append(edge.u, edge.v, scaled, probability)
        logger.debug(f"Kept ({edge.u}, {edge.v}) p={probability:.4g} w'={scaled:.4g}")
        return SampleDecision(kept=True, probability=probability, scaled_weight=scaled)

    def offer_many(self, edges: Iterable[WeightedEdge]) -> list[SampleDecision]:
        return [self.offer(e) for e in edges]

    def _append(self, u: int, v: int, weight: float, probability: float) -> None:
        self._rows.append(IncidenceRow(u, v, math.sqrt(weight)))
        self._weights.append(weight)
        self._probabilities.append(probability)

        lap = self._laplacian
        lap[u, u] += weight
        lap[v, v] += weight
        lap[u, v] -= weight
        lap[v, u] -= weight

        self._rank_one_update(u, v, weight)
        self._since_refresh += 1
        if self._since_refresh >= self.config.refresh_every:
            self.refresh()

    def _rank_one_update(self, u: int, v: int, weight: float) -> None:
        self._components.merge(u, v)
        block = np.fromiter(sorted(self._components.subset(u)), dtype=np.int64)

        if len(block) == self._n:
            inv = self._inverse
            z = inv[:, u] - inv[:, v]
            denom = 1.0 + weight * (z[u] - z[v])
            inv -= np.outer(z, z) * (weight / denom)
            return

        index = np.ix_(block, block)
        sub = self._inverse[index]
        iu = int(np.searchsorted(block, u))
        iv = int(np.searchsorted(block, v))
        z = sub[:, iu] - sub[:, iv]
        denom = 1.0 + weight * (z[iu] - z[iv])
        sub -= np.outer(z, z) * (weight / denom)
        self._inverse[index] = sub

    def refresh(self) -> None:
        """Recompute the maintained inverse from a Cholesky factorization.

        Raises:
            SamplerInvariantError: If the accumulator is not SPD
        """
        try:
            factor = scipy.linalg.cho_factor(self.gram().toarray(), lower=True)
        except scipy.linalg.LinAlgError as e:
            raise SamplerInvariantError(f"Accumulator is not positive definite: {e}") from e
        inverse = scipy.linalg.cho_solve(factor, np.eye(self._n))
        self._inverse = 0.5 * (inverse + inverse.T)
        self._since_refresh = 0

    def gram_residual(self) -> float:
        """Relative Frobenius error of the accumulator against a recomputation."""
        recomputed = self.to_graph().laplacian() + scipy.sparse.identity(
            self._n, format="csr"
        ) * self._ridge
        diff = self.gram() - recomputed
        return float(scipy.sparse.linalg.norm(diff) / scipy.sparse.linalg.norm(recomputed))

    def kept_edges(self, start: int = 0) -> list[WeightedEdge]:
        return [
            WeightedEdge(row.u, row.v, w)
            for row, w in zip(self._rows[start:], self._weights[start:])
        ]

    def to_graph(self) -> Graph:
        """The sparsifier H: kept row ``sqrt(w/p) b(e)`` becomes edge weight ``w/p``."""
        return Graph.from_arrays(
            self._n,
            [row.u for row in self._rows],
            [row.v for row in self._rows],
            self._weights,
        )

    def dump_rows(self, path: str | Path) -> Path:
        """Write kept rows as ``u v scaled_weight p`` lines."""
        out = Path(path)
        with out.open("w", encoding="utf-8") as f:
            f.write("# u v scaled_weight p\n")
            for row, w, p in zip(self._rows, self._weights, self._probabilities):
                f.write(f"{row.u} {row.v} {w!r} {p!r}\n")
        return out


def sparsifier_graph(sampler: OnlineSampler) -> Graph:
    """Materialize the sampler's sparsifier as a graph."""
    return sampler.to_graph()
