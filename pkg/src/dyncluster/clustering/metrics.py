"""Partition quality metrics: NCut, conductance profile, spectral gap, alignment."""

import json
import logging
import warnings
from collections.abc import Iterable
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from numpy.typing import NDArray
from scipy.optimize import linear_sum_assignment

from ..graph.core import Graph, _node_array, normalized_laplacian_eigenvalues
from ..models.schemas import QualityReport
from .partition import ClusteringError, Partition

logger = logging.getLogger(__name__)


class UndefinedNCutError(ClusteringError):
    """Every cluster of the partition has zero volume."""

    pass


class ZeroVolumeClusterWarning(UserWarning):
    """A cluster with zero volume was skipped."""

    pass


def _check_sizes(g: Graph, p: Partition) -> None:
    if p.n != g.n:
        raise ClusteringError(f"Partition covers {p.n} nodes but graph has {g.n}")


def cluster_cuts_and_volumes(
    g: Graph, p: Partition
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Per-cluster crossing weight and volume."""
    _check_sizes(g, p)
    labels = p.labels
    lu = labels[g.heads]
    lv = labels[g.tails]
    crossing = lu != lv
    w = g.weights[crossing]
    cuts = np.bincount(lu[crossing], weights=w, minlength=p.k)
    cuts += np.bincount(lv[crossing], weights=w, minlength=p.k)
    volumes = np.bincount(labels, weights=g.degrees(), minlength=p.k)
    return cuts, volumes


def ncut(g: Graph, p: Partition) -> float:
    """Normalized cut ``sum_i cut(A_i) / vol(A_i)``.

    Zero-volume clusters contribute nothing and emit a
    ``ZeroVolumeClusterWarning``.

    Raises:
        UndefinedNCutError: If no cluster has positive volume
        ClusteringError: If the partition does not cover the graph's nodes
    """
    cuts, volumes = cluster_cuts_and_volumes(g, p)
    positive = volumes > 0
    if not positive.any():
        raise UndefinedNCutError("NCut is undefined: all clusters have zero volume")
    empty = int((~positive).sum())
    if empty:
        warnings.warn(
            f"{empty} of {p.k} clusters have zero volume and were skipped",
            ZeroVolumeClusterWarning,
            stacklevel=2,
        )
    return float((cuts[positive] / volumes[positive]).sum())


def ncut_or_none(g: Graph, p: Partition) -> float | None:
    """NCut, or None when it is undefined. Zero-volume warnings are suppressed."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ZeroVolumeClusterWarning)
        try:
            return ncut(g, p)
        except UndefinedNCutError:
            return None


def sym_diff_vol(g: Graph, a: Iterable[int], b: Iterable[int]) -> float:
    """Volume of the symmetric difference of two node sets.

    Raises:
        GraphError: If either set has a node outside ``[0, n)``
    """
    in_a = np.zeros(g.n, dtype=bool)
    in_b = np.zeros(g.n, dtype=bool)
    in_a[_node_array(g, a)] = True
    in_b[_node_array(g, b)] = True
    return float(g.degrees()[in_a ^ in_b].sum())


@dataclass(frozen=True)
class ClusterQuality:
    """Quality of one partition against one graph.

    ``conductance`` holds None for zero-volume clusters; ``upsilon`` is None
    when every defined conductance is zero.
    """

    ncut: float | None
    conductance: tuple[float | None, ...]
    max_conductance: float
    lambda_k1: float
    upsilon: float | None

    def to_report(self) -> QualityReport:
        return QualityReport(
            ncut=self.ncut,
            conductance=list(self.conductance),
            max_conductance=self.max_conductance,
            lambda_k1=self.lambda_k1,
            upsilon=self.upsilon,
        )

    def write_json(self, path: str | Path) -> Path:
        out = Path(path)
        out.write_text(json.dumps(self.to_report().model_dump(), indent=2), encoding="utf-8")
        return out


def partition_quality(g: Graph, p: Partition) -> ClusterQuality:
    """NCut, conductance profile, ``lambda_{k+1}`` and the gap ``lambda_{k+1} / rho``.

    Raises:
        GraphError: If the graph has fewer than k+1 non-isolated nodes
    """
    cuts, volumes = cluster_cuts_and_volumes(g, p)
    phis: list[float | None] = [
        float(c / v) if v > 0 else None for c, v in zip(cuts, volumes)
    ]
    defined = [phi for phi in phis if phi is not None]
    max_phi = max(defined) if defined else 0.0
    lambda_k1 = float(normalized_laplacian_eigenvalues(g, p.k + 1)[p.k])
    upsilon = lambda_k1 / max_phi if max_phi > 0 else None
    return ClusterQuality(
        ncut=float(sum(defined)) if defined else None,
        conductance=tuple(phis),
        max_conductance=max_phi,
        lambda_k1=lambda_k1,
        upsilon=upsilon,
    )


def match_partitions(a: Partition, b: Partition, g: Graph) -> float:
    """Minimum total ``sym_diff_vol`` over cluster alignments, divided by ``vol(V)``.

    The alignment is solved as an assignment problem over the k x k matrix of
    pairwise symmetric-difference volumes.

    Raises:
        ClusteringError: If the partitions have different k or node counts
    """
    if a.k != b.k:
        raise ClusteringError(f"Cannot match a {a.k}-partition with a {b.k}-partition")
    _check_sizes(g, a)
    _check_sizes(g, b)

    deg = g.degrees()
    total = float(deg.sum())
    if total <= 0:
        return 0.0

    # |A_i xor B_j| volume = vol(A_i) + vol(B_j) - 2 vol(A_i & B_j)
    vol_a = np.bincount(a.labels, weights=deg, minlength=a.k)
    vol_b = np.bincount(b.labels, weights=deg, minlength=b.k)
    overlap = np.zeros((a.k, b.k))
    np.add.at(overlap, (a.labels, b.labels), deg)
    cost = vol_a[:, None] + vol_b[None, :] - 2.0 * overlap

    rows, cols = linear_sum_assignment(cost)
    score = float(cost[rows, cols].sum()) / total
    logger.debug(f"Partition alignment {dict(zip(rows.tolist(), cols.tolist()))} score={score:.4g}")
    return max(score, 0.0)
