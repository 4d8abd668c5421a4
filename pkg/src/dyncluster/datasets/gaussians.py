"""Point clouds and the four-Gaussians similarity graph."""

from __future__ import annotations

import csv
import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from numpy.typing import NDArray

from ..constants import GAUSSIANS_MEANS, GAUSSIANS_PER_CLUSTER, GAUSSIANS_VARIANCE
from ..graph.core import Graph
from ..models.schemas import SimilarityGraphConfig
from .knn import knn_union_graph

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class PointCloud:
    """Node coordinates with optional ground-truth labels."""

    points: NDArray[np.float64]
    labels: NDArray[np.int64] | None = None

    def __post_init__(self) -> None:
        points = np.asarray(self.points, dtype=np.float64)
        if points.ndim != 2:
            raise ValueError(f"Points must be a 2-D array, got shape {points.shape}")
        if not np.all(np.isfinite(points)):
            raise ValueError("Point coordinates must be finite")
        object.__setattr__(self, "points", points)
        if self.labels is not None:
            labels = np.asarray(self.labels, dtype=np.int64)
            if labels.shape != (len(points),):
                raise ValueError("Need exactly one label per point")
            object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @property
    def x(self) -> NDArray[np.float64]:
        """First coordinate, which orders edge arrivals."""
        return self.points[:, 0]

    def to_csv(self, path: str | Path) -> Path:
        """Write ``x0,x1,...[,label]`` rows."""
        out = Path(path)
        header = [f"x{i}" for i in range(self.dim)]
        if self.labels is not None:
            header.append("label")
        with out.open("w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            writer.writerow(header)
            for i, row in enumerate(self.points.tolist()):
                values: list[object] = [repr(v) for v in row]
                if self.labels is not None:
                    values.append(int(self.labels[i]))
                writer.writerow(values)
        return out

    @classmethod
    def from_csv(cls, path: str | Path) -> PointCloud:
        with Path(path).open("r", newline="", encoding="utf-8") as f:
            reader = csv.reader(f)
            header = next(reader)
            rows = [r for r in reader if r]
        has_labels = bool(header) and header[-1] == "label"
        width = len(header) - int(has_labels)
        points = np.array([[float(v) for v in r[:width]] for r in rows], dtype=np.float64)
        points = points.reshape(len(rows), width)
        labels = np.array([int(r[width]) for r in rows], dtype=np.int64) if has_labels else None
        return cls(points, labels)


def sample_gaussians(
    seed: int,
    per_cluster: int = GAUSSIANS_PER_CLUSTER,
    variance: float = GAUSSIANS_VARIANCE,
    means: Sequence[Sequence[float]] = GAUSSIANS_MEANS,
) -> PointCloud:
    """Isotropic Gaussian blobs, cluster-major order, labels = blob index."""
    centers = np.asarray(means, dtype=np.float64)
    rng = np.random.default_rng(seed)
    labels = np.repeat(np.arange(len(centers)), per_cluster)
    noise = rng.normal(scale=math.sqrt(variance), size=(len(labels), centers.shape[1]))
    return PointCloud(centers[labels] + noise, labels)


def gen_gaussians(
    seed: int,
    similarity: SimilarityGraphConfig | None = None,
    per_cluster: int = GAUSSIANS_PER_CLUSTER,
) -> tuple[PointCloud, Graph]:
    """The four-cluster Gaussians dataset and its kNN-union similarity graph.

    Args:
        seed: Sampling seed
        similarity: Neighbor count and bandwidth (K=100, sigma=1 by default)
        per_cluster: Points per blob

    Returns:
        Tuple of (point cloud with labels, similarity graph)
    """
    cloud = sample_gaussians(seed, per_cluster=per_cluster)
    graph = knn_union_graph(cloud.points, similarity or SimilarityGraphConfig())
    logger.info(f"Gaussians dataset: seed={seed}, n={graph.n}, m={graph.m}")
    return cloud, graph
