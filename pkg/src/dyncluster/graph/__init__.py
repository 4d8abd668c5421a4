"""Graph representation and Laplacian/cut primitives."""

from .core import (
    Graph,
    GraphError,
    IncidenceRow,
    Spectrum,
    WeightedEdge,
    conductance,
    cut_weight,
    normalized_laplacian,
    normalized_laplacian_eigenvalues,
    normalized_laplacian_spectrum,
    quadratic_form,
    volume,
)
from .edgelist import read_edge_list, write_edge_list

__all__ = [
    "Graph",
    "GraphError",
    "IncidenceRow",
    "Spectrum",
    "WeightedEdge",
    "conductance",
    "cut_weight",
    "normalized_laplacian",
    "normalized_laplacian_eigenvalues",
    "normalized_laplacian_spectrum",
    "quadratic_form",
    "volume",
    "read_edge_list",
    "write_edge_list",
]
