"""Dense effective-resistance oracle used to verify the sampler's scores."""

import numpy as np
import scipy.sparse.csgraph

from ..graph.core import Graph, GraphError


def exact_effective_resistance(g: Graph, u: int, v: int) -> float:
    """``b(e)^T L^+ b(e)`` for the pair ``(u, v)`` via a dense pseudoinverse.

    O(n^3); meant for tests and small graphs.

    Raises:
        GraphError: If ``u`` and ``v`` lie in different components
    """
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise GraphError(f"Endpoints ({u}, {v}) outside [0, {g.n})")
    if u == v:
        return 0.0
    _, labels = scipy.sparse.csgraph.connected_components(g.adjacency(), directed=False)
    if labels[u] != labels[v]:
        raise GraphError(f"Nodes {u} and {v} are disconnected")

    pinv = np.linalg.pinv(g.laplacian().toarray(), hermitian=True)
    return float(pinv[u, u] + pinv[v, v] - 2.0 * pinv[u, v])
