"""Experiment config files: JSON or YAML into ``ExperimentConfig``."""

import json
import logging
from pathlib import Path
from typing import Any

import yaml
from pydantic import ValidationError

from ..models.schemas import ExperimentConfig

logger = logging.getLogger(__name__)


class ConfigError(ValueError):
    """Raised when an experiment config cannot be read or validated."""

    pass


def load_config(path: str | Path) -> ExperimentConfig:
    """Load and validate an experiment config.

    ``.yaml``/``.yml`` files are parsed with PyYAML, anything else as JSON.

    Raises:
        ConfigError: If the file is missing, unparsable or invalid
    """
    src = Path(path)
    try:
        text = src.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ConfigError(f"Config file not found: {src}") from None

    try:
        if src.suffix.lower() in (".yaml", ".yml"):
            data = yaml.safe_load(text)
        else:
            data = json.loads(text)
    except (json.JSONDecodeError, yaml.YAMLError) as e:
        raise ConfigError(f"Cannot parse {src}: {e}") from e

    if not isinstance(data, dict):
        raise ConfigError(f"Config {src} must be a mapping at the top level")

    cfg = validate_config(data)
    logger.info(f"Loaded experiment config '{cfg.name}' from {src}")
    return cfg


def validate_config(data: dict[str, Any]) -> ExperimentConfig:
    """Validate a raw mapping.

    Raises:
        ConfigError: On any validation failure
    """
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"Invalid experiment config: {e}") from e


def apply_overrides(cfg: ExperimentConfig, **overrides: Any) -> ExperimentConfig:
    """Return ``cfg`` with non-None overrides applied and revalidated.

    ``seed`` sets every named seed at once.

    Raises:
        ConfigError: If the result is invalid
    """
    data = cfg.model_dump()
    seed = overrides.pop("seed", None)
    if seed is not None:
        data["seeds"] = {name: seed for name in data["seeds"]}
    for key, value in overrides.items():
        if value is not None:
            data[key] = value
    return validate_config(data)
