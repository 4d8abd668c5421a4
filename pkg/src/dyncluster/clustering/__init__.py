"""Spectral clustering and partition quality."""

from .metrics import (
    ClusterQuality,
    UndefinedNCutError,
    ZeroVolumeClusterWarning,
    cluster_cuts_and_volumes,
    match_partitions,
    ncut,
    ncut_or_none,
    partition_quality,
    sym_diff_vol,
)
from .partition import ClusteringError, Partition
from .spectral import spectral_cluster, spectral_embedding

__all__ = [
    "ClusterQuality",
    "ClusteringError",
    "Partition",
    "UndefinedNCutError",
    "ZeroVolumeClusterWarning",
    "cluster_cuts_and_volumes",
    "match_partitions",
    "ncut",
    "ncut_or_none",
    "partition_quality",
    "spectral_cluster",
    "spectral_embedding",
    "sym_diff_vol",
]
