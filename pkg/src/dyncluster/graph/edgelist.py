"""Edge-list text format: one ``u v w`` edge per line, ``#`` comments.

A ``# nodes: <n>`` comment fixes the node count so that trailing isolated
nodes survive a round trip. Without it, ``n`` is one past the largest index.
"""

import logging
import re
from pathlib import Path

import numpy as np

from .core import Graph, GraphError

logger = logging.getLogger(__name__)

_NODES_HEADER = re.compile(r"^#\s*nodes\s*:\s*(\d+)\s*$")


def write_edge_list(g: Graph, path: str | Path) -> Path:
    """Write a graph in edge-list format.

    Args:
        g: Graph to write
        path: Destination file

    Returns:
        Path written
    """
    out = Path(path)
    with out.open("w", encoding="utf-8") as f:
        f.write(f"# nodes: {g.n}\n")
        for u, v, w in zip(g.heads.tolist(), g.tails.tolist(), g.weights.tolist()):
            f.write(f"{u} {v} {w!r}\n")
    logger.info(f"Wrote {g.m} edges on {g.n} nodes to {out}")
    return out


def read_edge_list(path: str | Path, n: int | None = None) -> Graph:
    """Read an edge-list file.

    Args:
        path: Source file
        n: Node count override; defaults to the header or the largest index + 1

    Raises:
        GraphError: On malformed lines or endpoints outside ``[0, n)``
    """
    src = Path(path)
    header_n: int | None = None
    with src.open("r", encoding="utf-8") as f:
        for line in f:
            match = _NODES_HEADER.match(line.strip())
            if match:
                header_n = int(match.group(1))
                break

    try:
        data = np.loadtxt(src, comments="#", ndmin=2, dtype=np.float64)
    except ValueError as e:
        raise GraphError(f"Malformed edge list {src}: {e}") from e

    if data.size == 0:
        data = np.zeros((0, 3))
    if data.shape[1] == 2:
        data = np.column_stack([data, np.ones(len(data))])
    if data.shape[1] != 3:
        raise GraphError(f"Edge list {src} must have 'u v w' columns, found {data.shape[1]}")

    u = data[:, 0].astype(np.int64)
    v = data[:, 1].astype(np.int64)
    if n is None:
        n = header_n if header_n is not None else (int(max(u.max(), v.max())) + 1 if len(u) else 0)
    return Graph.from_arrays(n, u, v, data[:, 2])
