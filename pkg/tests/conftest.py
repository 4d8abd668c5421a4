"""Test configuration for pytest."""

import itertools
import tempfile
from pathlib import Path

import numpy as np
import pytest

from src.dyncluster.datasets.gaussians import PointCloud, sample_gaussians
from src.dyncluster.datasets.knn import knn_union_graph
from src.dyncluster.datasets.schedule_gen import gen_schedule
from src.dyncluster.graph.core import Graph, WeightedEdge
from src.dyncluster.models.schemas import SamplerConfig, SimilarityGraphConfig

SEPARATED_MEANS = ((0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0))


def complete_graph(nodes: list[int], w: float = 1.0) -> list[WeightedEdge]:
    """Unit clique edges over ``nodes``."""
    return [WeightedEdge(u, v, w) for u, v in itertools.combinations(nodes, 2)]


def random_graph(n: int, p: float, seed: int, weighted: bool = True) -> Graph:
    """Erdos-Renyi graph, optionally with weights in [0.5, 2)."""
    rng = np.random.default_rng(seed)
    edges = []
    for u, v in itertools.combinations(range(n), 2):
        if rng.random() < p:
            w = float(rng.uniform(0.5, 2.0)) if weighted else 1.0
            edges.append(WeightedEdge(u, v, w))
    return Graph(n, edges)


@pytest.fixture
def temp_dir():
    """Create a temporary directory for tests."""
    with tempfile.TemporaryDirectory() as tmp_dir:
        yield Path(tmp_dir)


@pytest.fixture
def k4() -> Graph:
    """Unit-weight complete graph on 4 nodes."""
    return Graph(4, complete_graph([0, 1, 2, 3]))


@pytest.fixture
def path3() -> Graph:
    """Unit-weight path 0-1-2."""
    return Graph(3, [WeightedEdge(0, 1), WeightedEdge(1, 2)])


@pytest.fixture
def two_cliques() -> Graph:
    """Two unit 10-cliques joined by one weight-0.01 edge."""
    edges = complete_graph(list(range(10))) + complete_graph(list(range(10, 20)))
    edges.append(WeightedEdge(9, 10, 0.01))
    return Graph(20, edges)


@pytest.fixture
def small_cloud() -> PointCloud:
    """Four well-separated Gaussian blobs of 15 points each."""
    return sample_gaussians(seed=0, per_cluster=15, means=SEPARATED_MEANS)


@pytest.fixture
def small_graph(small_cloud) -> Graph:
    """kNN-union graph over ``small_cloud``."""
    return knn_union_graph(small_cloud.points, SimilarityGraphConfig(neighbors=8, sigma=1.0))


@pytest.fixture
def small_schedule(small_graph, small_cloud):
    """Four time points over three sites, no deletions."""
    return gen_schedule(small_graph, small_cloud, t=4, s=3, seed=0)


@pytest.fixture
def small_sampler_config(small_graph) -> SamplerConfig:
    """Sampler tuned to actually drop edges at this scale."""
    return SamplerConfig(n=small_graph.n, epsilon=0.3, delta=3.0, oversampling=1.5, seed=7)
