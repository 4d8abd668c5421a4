"""Experimental inputs: Gaussians, pixel graphs and stream schedules."""

from .gaussians import PointCloud, gen_gaussians, sample_gaussians
from .image import DegenerateImageWarning, gen_image_graph, image_point_cloud, load_image
from .knn import knn_union_graph
from .schedule_gen import EmptyBucketWarning, gen_schedule

__all__ = [
    "DegenerateImageWarning",
    "EmptyBucketWarning",
    "PointCloud",
    "gen_gaussians",
    "gen_image_graph",
    "gen_schedule",
    "image_point_cloud",
    "knn_union_graph",
    "load_image",
    "sample_gaussians",
]
