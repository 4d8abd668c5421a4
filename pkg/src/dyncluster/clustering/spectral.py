"""NJW spectral clustering on the normalized Laplacian."""

import logging

import numpy as np
from sklearn.cluster import KMeans

from ..constants import KMEANS_MAX_ITER, KMEANS_TOL
from ..graph.core import Graph, GraphError, normalized_laplacian_spectrum
from .partition import ClusteringError, Partition

logger = logging.getLogger(__name__)


def spectral_embedding(g: Graph, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Row-normalized k-dimensional eigenvector embedding of non-isolated nodes.

    Returns:
        Tuple of (embedding rows, non-isolated node mask)

    Raises:
        ClusteringError: If fewer than k nodes are non-isolated
    """
    try:
        spectrum = normalized_laplacian_spectrum(g, k)
    except GraphError as e:
        raise ClusteringError(f"Cannot embed into {k} dimensions: {e}") from e

    rows = spectrum.vectors
    norms = np.linalg.norm(rows, axis=1, keepdims=True)
    norms[norms == 0] = 1.0
    return rows / norms, spectrum.mask


def spectral_cluster(g: Graph, k: int, seed: int = 0) -> Partition:
    """Cluster nodes into k groups.

    Embeds the non-isolated nodes with the k eigenvectors of smallest
    eigenvalue, row-normalizes, and runs k-means++-seeded Lloyd iterations.
    Isolated nodes are labeled 0.

    Args:
        g: Graph to cluster
        k: Cluster count
        seed: k-means seed

    Raises:
        ClusteringError: If fewer than k nodes are non-isolated
    """
    embedding, mask = spectral_embedding(g, k)

    kmeans = KMeans(
        n_clusters=k,
        init="k-means++",
        n_init=1,
        max_iter=KMEANS_MAX_ITER,
        tol=KMEANS_TOL,
        random_state=seed,
        algorithm="lloyd",
    )
    active_labels = kmeans.fit_predict(embedding)

    labels = np.zeros(g.n, dtype=np.int64)
    labels[mask] = active_labels
    logger.debug(f"Spectral clustering: {int(mask.sum())} nodes into {k} clusters")
    return Partition(labels, k)
