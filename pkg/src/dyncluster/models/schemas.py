"""Pydantic models for sampler, dataset and experiment configuration."""

import math
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..constants import (
    BASELINE_SITES,
    BASELINE_TIME_POINTS,
    DEFAULT_DELTA_SCALE,
    DEFAULT_REFRESH_EVERY,
    GAUSSIANS_NEIGHBORS,
    GAUSSIANS_SIGMA,
)

AlgorithmName = Literal["cntrl", "d2camp", "d2cabl", "stmp", "stbl"]
ALGORITHM_ORDER: tuple[AlgorithmName, ...] = ("cntrl", "d2camp", "d2cabl", "stmp", "stbl")


class SamplerConfig(BaseModel):
    """Parameters of the online ridge-leverage sampler.

    ``delta`` defaults to ``epsilon * 1e-6 * typical_weight``. ``oversampling``
    replaces the derived constant ``c = 8 ln(n) / epsilon^2`` when set.
    """

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=2, description="Node count")
    epsilon: float = Field(default=0.3, gt=0.0, lt=1.0 / 3.0)
    delta: float | None = Field(default=None, gt=0.0)
    typical_weight: float = Field(default=1.0, gt=0.0)
    seed: int = Field(default=0, ge=0, lt=2**64)
    oversampling: float | None = Field(default=None, gt=0.0)
    refresh_every: int = Field(default=DEFAULT_REFRESH_EVERY, ge=1)

    @property
    def effective_delta(self) -> float:
        if self.delta is not None:
            return self.delta
        return self.epsilon * DEFAULT_DELTA_SCALE * self.typical_weight

    @property
    def ridge(self) -> float:
        """Ridge term ``lambda = delta / epsilon``."""
        return self.effective_delta / self.epsilon

    @property
    def c(self) -> float:
        """Sampling constant multiplying the leverage score."""
        if self.oversampling is not None:
            return self.oversampling
        return 8.0 * math.log(self.n) / self.epsilon**2

    def with_seed(self, seed: int) -> "SamplerConfig":
        return self.model_copy(update={"seed": seed})


class SimilarityGraphConfig(BaseModel):
    """kNN-union similarity graph with a Gaussian kernel."""

    model_config = ConfigDict(frozen=True)

    neighbors: int = Field(default=GAUSSIANS_NEIGHBORS, ge=1, description="K nearest points")
    sigma: float = Field(default=GAUSSIANS_SIGMA, gt=0.0, description="Kernel bandwidth")


class DatasetSpec(BaseModel):
    """Which graph an experiment runs on."""

    kind: Literal["gaussians", "image", "edges"] = "gaussians"
    image: Path | None = Field(default=None, description="PNG/PPM raster for kind=image")
    edges: Path | None = Field(default=None, description="Edge list for kind=edges")
    points: Path | None = Field(default=None, description="Point CSV for kind=edges")
    neighbors: int | None = Field(default=None, ge=1)
    sigma: float | None = Field(default=None, gt=0.0)

    @model_validator(mode="after")
    def validate_sources(self) -> "DatasetSpec":
        """Validate referenced files exist for the chosen kind."""
        if self.kind == "image":
            if self.image is None:
                raise ValueError("dataset.image is required for kind=image")
            if not self.image.is_file():
                raise ValueError(f"Image file not found: {self.image}")
        if self.kind == "edges":
            for label, path in (("edges", self.edges), ("points", self.points)):
                if path is None:
                    raise ValueError(f"dataset.{label} is required for kind=edges")
                if not path.is_file():
                    raise ValueError(f"{label} file not found: {path}")
        return self


class SeedConfig(BaseModel):
    """Named seeds; every random choice in a run flows from one of these."""

    dataset: int = Field(default=0, ge=0)
    schedule: int = Field(default=0, ge=0)
    sampler: int = Field(default=0, ge=0)
    clustering: int = Field(default=0, ge=0)


class SweepSpec(BaseModel):
    """Vary the site count or the time-point count."""

    parameter: Literal["s", "t"]
    values: list[int] = Field(..., min_length=1)

    @field_validator("values")
    @classmethod
    def validate_values(cls, v: list[int]) -> list[int]:
        if any(x < 1 for x in v):
            raise ValueError("Sweep values must be >= 1")
        return v


class ExperimentConfig(BaseModel):
    """One experiment: dataset, stream shape, algorithms and seeds."""

    model_config = ConfigDict(extra="forbid")

    name: str = "experiment"
    dataset: DatasetSpec = Field(default_factory=DatasetSpec)
    algorithms: list[AlgorithmName] = Field(default_factory=lambda: list(ALGORITHM_ORDER))
    t: int = Field(default=BASELINE_TIME_POINTS, ge=1)
    s: int = Field(default=BASELINE_SITES, ge=1)
    k: int = Field(default=4, ge=1)
    epsilon: float = Field(default=0.3, gt=0.0, lt=1.0 / 3.0)
    delta: float | None = Field(default=None, gt=0.0)
    oversampling: float | None = Field(default=None, gt=0.0)
    delete_frac: float = Field(default=0.0, ge=0.0, lt=1.0)
    cluster_every: int = Field(default=1, ge=1)
    seeds: SeedConfig = Field(default_factory=SeedConfig)
    sweep: SweepSpec | None = None
    output_dir: Path = Path("results")

    @field_validator("algorithms")
    @classmethod
    def validate_algorithms(cls, v: list[AlgorithmName]) -> list[AlgorithmName]:
        """Algorithm list must be non-empty; duplicates are dropped."""
        if not v:
            raise ValueError("At least one algorithm is required")
        return [a for a in ALGORITHM_ORDER if a in v]

    def sampler_config(self, n: int) -> SamplerConfig:
        return SamplerConfig(
            n=n,
            epsilon=self.epsilon,
            delta=self.delta,
            oversampling=self.oversampling,
            seed=self.seeds.sampler,
        )


class QualityReport(BaseModel):
    """Serialized clustering quality."""

    ncut: float | None
    conductance: list[float | None]
    max_conductance: float
    lambda_k1: float
    upsilon: float | None
