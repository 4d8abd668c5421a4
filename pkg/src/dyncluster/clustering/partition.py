"""k-way node partitions."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from numpy.typing import ArrayLike, NDArray


class ClusteringError(ValueError):
    """Raised when a clustering cannot be produced or compared."""

    pass


@dataclass(frozen=True, eq=False)
class Partition:
    """Labeling of every node with a cluster id in ``[0, k)``.

    Isolated nodes carry cluster 0.
    """

    labels: NDArray[np.int64]
    k: int
    _members: tuple[NDArray[np.int64], ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        labels = np.asarray(self.labels, dtype=np.int64)
        if labels.ndim != 1:
            raise ClusteringError("Partition labels must be one-dimensional")
        if self.k < 1:
            raise ClusteringError(f"Cluster count must be >= 1, got {self.k}")
        if len(labels) and (labels.min() < 0 or labels.max() >= self.k):
            raise ClusteringError(f"Labels must lie in [0, {self.k})")
        labels.setflags(write=False)
        object.__setattr__(self, "labels", labels)
        members = tuple(np.flatnonzero(labels == i) for i in range(self.k))
        object.__setattr__(self, "_members", members)

    @classmethod
    def from_labels(cls, labels: ArrayLike, k: int | None = None) -> Partition:
        arr = np.asarray(labels, dtype=np.int64)
        if k is None:
            k = int(arr.max()) + 1 if len(arr) else 1
        return cls(arr, k)

    @property
    def n(self) -> int:
        return len(self.labels)

    def cluster(self, i: int) -> NDArray[np.int64]:
        """Nodes of cluster ``i``."""
        return self._members[i]

    def clusters(self) -> tuple[NDArray[np.int64], ...]:
        return self._members

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.k == other.k and np.array_equal(self.labels, other.labels)

    def __hash__(self) -> int:
        return hash((self.k, self.labels.tobytes()))

    def to_csv(self, path: str | Path) -> Path:
        """Write ``node,label`` rows."""
        out = Path(path)
        with out.open("w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            writer.writerow(["node", "label"])
            writer.writerows(enumerate(self.labels.tolist()))
        return out

    @classmethod
    def from_csv(cls, path: str | Path, k: int | None = None) -> Partition:
        with Path(path).open("r", newline="", encoding="utf-8") as f:
            rows = sorted((int(r["node"]), int(r["label"])) for r in csv.DictReader(f))
        nodes = [node for node, _ in rows]
        if nodes != list(range(len(nodes))):
            raise ClusteringError(f"Partition file {path} must list nodes 0..n-1")
        return cls.from_labels([label for _, label in rows], k)
