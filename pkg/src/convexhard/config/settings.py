"""Configuration settings for the convexhard toolkit.

This module provides centralized configuration management: default limits for
the exhaustive checks, generator and plot settings, and logging options,
optionally overridden section by section from a JSON config file.
"""

import copy
import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional

logger = logging.getLogger(__name__)

# Default configuration settings
DEFAULT_CONFIG: Dict[str, Dict[str, Any]] = {
    "check": {
        # total |L| + |B| above which exhaustive modes refuse to run
        "cap": 18,
        "corollary_cap": 14,
        "sample_size": 256,
        "sample_seed": 0,
    },
    "gen": {"density": "1/2"},
    "plot": {"precision": 3, "scale": 40, "margin": 2},
    "logging": {
        "level": "INFO",
        "format": "%(asctime)s [%(levelname)s] %(name)s: %(message)s",
    },
}


def load_config(config_path: Optional[str] = None) -> Dict[str, Any]:
    """Load configuration from defaults and an optional config file.

    Args:
        config_path: Optional path to JSON config file

    Returns:
        Dictionary containing merged configuration
    """
    config = copy.deepcopy(DEFAULT_CONFIG)

    if config_path is None:
        return config
    if not Path(config_path).exists():
        logger.warning(f"Config file {config_path} not found, using defaults")
        return config

    try:
        with open(config_path, "r") as f:
            file_config = json.load(f)
    except (json.JSONDecodeError, IOError) as e:
        logger.warning(f"Could not load config file {config_path}: {e}")
        return config

    if not isinstance(file_config, dict):
        logger.warning(f"Config file {config_path} must hold a JSON object, ignoring it")
        return config

    # Merge file config into defaults
    for section, values in file_config.items():
        if (
            section in config
            and isinstance(values, dict)
            and isinstance(config[section], dict)
        ):
            config[section].update(values)
        else:
            config[section] = values

    logger.info(f"Loaded config from {config_path}")
    return config


def _section(name: str, config: Optional[Dict[str, Any]]) -> Dict[str, Any]:
    if config is None:
        config = load_config()
    return dict(config[name])


def get_check_config(config: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """Get check battery limits.

    Args:
        config: Optional config dictionary, will load default if not provided

    Returns:
        Dictionary with cap, corollary_cap, sample_size and sample_seed
    """
    check = _section("check", config)
    for key in ("cap", "corollary_cap", "sample_size"):
        value = check.get(key)
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            raise ValueError(f"check.{key} must be a positive integer, got {value!r}")
    return check


def get_gen_config(config: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    return _section("gen", config)


def get_plot_config(config: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """Get plot settings (decimal precision, pixels per unit, margin in units)."""
    return _section("plot", config)


def get_logging_config(config: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    return _section("logging", config)
