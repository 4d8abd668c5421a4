"""Pixel similarity graphs: one node per pixel at ``(x, y, r, g, b)``."""

from __future__ import annotations

import logging
import warnings
from pathlib import Path

import numpy as np
from numpy.typing import NDArray
from skimage import io, util

from ..constants import IMAGE_NEIGHBORS, IMAGE_SIGMA
from ..graph.core import Graph
from ..models.schemas import SimilarityGraphConfig
from .gaussians import PointCloud
from .knn import knn_union_graph

logger = logging.getLogger(__name__)


class DegenerateImageWarning(UserWarning):
    """The image has a single pixel, so its graph has no edges."""

    pass


def load_image(path: str | Path) -> NDArray[np.float64]:
    """Read a PNG or PPM raster as ``(height, width, 3)`` RGB reals in [0, 255].

    Grayscale is replicated across channels and alpha is dropped.
    """
    raster = util.img_as_ubyte(io.imread(str(path)))
    if raster.ndim == 2:
        raster = np.stack([raster] * 3, axis=-1)
    if raster.ndim != 3 or raster.shape[2] < 3:
        raise ValueError(f"Unsupported image shape {raster.shape} in {path}")
    logger.debug(f"Loaded {path}: {raster.shape[1]}x{raster.shape[0]}")
    return raster[:, :, :3].astype(np.float64)


def image_point_cloud(image: NDArray[np.float64]) -> PointCloud:
    """Row-major pixels as points ``(x=column, y=row, r, g, b)``.

    Raises:
        ValueError: If the image is empty or not ``(h, w, 3)``
    """
    img = np.asarray(image, dtype=np.float64)
    if img.ndim != 3 or img.shape[2] != 3:
        raise ValueError(f"Expected an (h, w, 3) RGB array, got shape {img.shape}")
    height, width = img.shape[:2]
    if height * width == 0:
        raise ValueError("Image has no pixels")
    ys, xs = np.mgrid[0:height, 0:width]
    points = np.column_stack([xs.ravel(), ys.ravel(), img.reshape(-1, 3)])
    return PointCloud(points)


def gen_image_graph(
    image: NDArray[np.float64] | str | Path,
    neighbors: int = IMAGE_NEIGHBORS,
    sigma: float = IMAGE_SIGMA,
) -> Graph:
    """kNN-union graph over the pixels of an RGB raster.

    Args:
        image: ``(h, w, 3)`` array or a path to a PNG/PPM file
        neighbors: K nearest pixels in ``(x, y, r, g, b)`` space
        sigma: Kernel bandwidth
    """
    if isinstance(image, (str, Path)):
        image = load_image(image)
    cloud = image_point_cloud(image)
    if cloud.n == 1:
        warnings.warn("Single-pixel image yields a graph without edges", DegenerateImageWarning)
        return Graph.empty(1)
    return knn_union_graph(cloud.points, SimilarityGraphConfig(neighbors=neighbors, sigma=sigma))
