"""kNN-union similarity graphs with a Gaussian kernel."""

import logging

import numpy as np
from numpy.typing import ArrayLike
from sklearn.metrics import pairwise_distances

from ..constants import MIN_WEIGHT
from ..graph.core import Graph
from ..models.schemas import SimilarityGraphConfig

logger = logging.getLogger(__name__)


def knn_union_graph(points: ArrayLike, config: SimilarityGraphConfig) -> Graph:
    """Connect u and v when either is among the other's K nearest points.

    Edge weight is ``exp(-||x_u - x_v||^2 / (2 sigma^2))``. Distance ties are
    broken by node index. Weights that underflow the graph's weight floor are
    dropped.

    Args:
        points: ``(n, d)`` coordinates
        config: Neighbor count and kernel bandwidth

    Returns:
        Graph on ``n`` nodes, one edge per unordered pair
    """
    x = np.asarray(points, dtype=np.float64)
    if x.ndim != 2:
        raise ValueError(f"Points must be a 2-D array, got shape {x.shape}")
    n = len(x)
    if n < 2:
        return Graph.empty(n)

    neighbors = min(config.neighbors, n - 1)
    sq = pairwise_distances(x, metric="sqeuclidean")
    np.fill_diagonal(sq, np.inf)
    nearest = np.argsort(sq, axis=1, kind="stable")[:, :neighbors]

    rows = np.repeat(np.arange(n), neighbors)
    cols = nearest.ravel()
    lo = np.minimum(rows, cols)
    hi = np.maximum(rows, cols)
    keys = np.unique(lo * n + hi)
    lo, hi = keys // n, keys % n

    weights = np.exp(-sq[lo, hi] / (2.0 * config.sigma**2))
    keep = weights >= MIN_WEIGHT
    dropped = int((~keep).sum())
    if dropped:
        logger.warning(f"Dropped {dropped} kNN edges with weight below {MIN_WEIGHT}")

    graph = Graph.from_arrays(n, lo[keep], hi[keep], weights[keep])
    logger.info(f"kNN-union graph: n={n}, m={graph.m}, K={neighbors}, sigma={config.sigma}")
    return graph
