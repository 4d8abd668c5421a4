"""Monotone online spectral sparsification."""

from .base import BaseMonotoneSketch, MonotoneSketch
from .online_sampler import (
    OnlineSampler,
    SampleDecision,
    SamplerInvariantError,
    sparsifier_graph,
)
from .resistance import exact_effective_resistance

__all__ = [
    "BaseMonotoneSketch",
    "MonotoneSketch",
    "OnlineSampler",
    "SampleDecision",
    "SamplerInvariantError",
    "sparsifier_graph",
    "exact_effective_resistance",
]
