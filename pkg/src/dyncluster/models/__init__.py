"""Configuration and report models."""

from .schemas import (
    ALGORITHM_ORDER,
    AlgorithmName,
    DatasetSpec,
    ExperimentConfig,
    QualityReport,
    SamplerConfig,
    SeedConfig,
    SimilarityGraphConfig,
    SweepSpec,
)

__all__ = [
    "ALGORITHM_ORDER",
    "AlgorithmName",
    "DatasetSpec",
    "ExperimentConfig",
    "QualityReport",
    "SamplerConfig",
    "SeedConfig",
    "SimilarityGraphConfig",
    "SweepSpec",
]
