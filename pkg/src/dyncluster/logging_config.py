"""Logging configuration for dyncluster."""

import logging.config
from typing import Any

# "dyncluster" when installed, "src.dyncluster" when run from a checkout
PACKAGE = __name__.rpartition(".")[0]


def get_logging_config(level: str = "INFO") -> dict[str, Any]:
    """Get logging configuration dictionary.

    Args:
        level: Level applied to the dyncluster logger tree

    Returns:
        Configuration for ``logging.config.dictConfig``
    """
    package_logger = {
        "level": level,
        "handlers": ["console"],
        "propagate": False,
    }
    return {
        "version": 1,
        "disable_existing_loggers": False,
        "formatters": {
            "default": {
                "format": "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
                "datefmt": "%Y-%m-%d %H:%M:%S",
            },
            "detailed": {
                "format": "%(asctime)s - %(name)s - %(levelname)s - %(module)s:%(funcName)s:%(lineno)d - %(message)s",
                "datefmt": "%Y-%m-%d %H:%M:%S",
            },
        },
        "handlers": {
            # stdout is reserved for CSV output of the spanner command
            "console": {
                "class": "logging.StreamHandler",
                "level": "DEBUG",
                "formatter": "default",
                "stream": "ext://sys.stderr",
            },
            "detailed_console": {
                "class": "logging.StreamHandler",
                "level": "DEBUG",
                "formatter": "detailed",
                "stream": "ext://sys.stderr",
            },
        },
        "loggers": {
            PACKAGE: dict(package_logger),
            f"{PACKAGE}.sparsify": dict(package_logger),
            f"{PACKAGE}.protocols": dict(package_logger),
            f"{PACKAGE}.experiments": dict(package_logger),
        },
        "root": {
            "level": "WARNING",
            "handlers": ["console"],
        },
    }


def setup_logging(level: str = "INFO", detailed: bool = False) -> None:
    """Configure logging for the command line harness."""
    config = get_logging_config(level)
    if detailed:
        for logger_cfg in config["loggers"].values():
            logger_cfg["handlers"] = ["detailed_console"]
    logging.config.dictConfig(config)

    logger = logging.getLogger(__name__)
    logger.debug("Logging configuration initialized")
