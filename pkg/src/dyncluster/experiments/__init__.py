"""Experiment harness: configs, runs, sweeps and plot data."""

from .config import ConfigError, apply_overrides, load_config, validate_config
from .plotdata import emit_plotdata
from .runner import (
    CellResult,
    ExperimentReport,
    package_versions,
    prepare_dataset,
    run_cells,
    run_experiment,
)

__all__ = [
    "CellResult",
    "ConfigError",
    "ExperimentReport",
    "apply_overrides",
    "emit_plotdata",
    "load_config",
    "package_versions",
    "prepare_dataset",
    "run_cells",
    "run_experiment",
    "validate_config",
]
