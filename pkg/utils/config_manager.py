#!/usr/bin/env python
"""
Optocorr - Configuration Manager

This module handles loading and saving configuration settings from config.json.
Numerical tolerances, verification grid sizes and logging options live here;
physical parameters are always passed explicitly.
"""

import copy
import json
import logging
import os

from utils import event_log

# Default configuration
DEFAULT_CONFIG = {
    "tolerances": {
        "physical": 1e-12,
        "entropy_clamp": 1e-12,
        "measure_clamp": 1e-12,
        "eigensolve_residual": 1e-10,
        "lyapunov_residual": 1e-10,
        "oracle_match": 1e-10,
        "spectral_match": 1e-6,
        "spectral_quadrature": 1e-8,
        "dominance": 1e-9,
        "comments": "Absolute tolerances used by the library and the verify command"
    },
    "verify": {
        "grid_points": 200,
        "spectral_points": 20,
        "seed": 20240517,
        "runtime_limit": 10.0,
        "comments": "Randomized oracle grid sizes, RNG seed and the oracle grid time limit in seconds"
    },
    "sweep": {
        "workers": 1,
        "float_format": ".17g",
        "comments": "Row-level worker threads and CSV float format"
    },
    "system": {
        "debug_mode": False,
        "log_file": None,
        "color": True,
        "console": True
    }
}

# Singleton config instance
_config = None


def get_config():
    """
    Get the current configuration.

    Returns:
        dict: Current configuration dictionary
    """
    global _config
    if _config is None:
        _config = load_config()
    return _config


def set_config(config):
    """Replace the current configuration (used by the command system and tests)."""
    global _config
    _config = config


def reset_config():
    """Drop the cached configuration so the next get_config() reloads it."""
    global _config
    _config = None


def get_tolerance(name):
    """Shortcut for a value in the tolerances section."""
    return get_config()["tolerances"][name]


def load_config(config_path="config.json"):
    """
    Load configuration from the config file, or fall back to the defaults if not found.

    Args:
        config_path (str): Path to the config.json file

    Returns:
        dict: Loaded configuration dictionary
    """
    config = copy.deepcopy(DEFAULT_CONFIG)

    if not os.path.exists(config_path):
        event_log.log_event("config_defaults_used", path=config_path)
        return config

    try:
        with open(config_path, 'r') as f:
            user_config = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        event_log.log_event("config_load_failed", level=logging.WARNING,
                            path=config_path, error=e)
        return config

    # Update default config with user values
    for section in user_config:
        if section in config:
            if isinstance(config[section], dict) and isinstance(user_config[section], dict):
                # For dict sections, only copy values that aren't comments
                for key, value in user_config[section].items():
                    if not key.startswith("_") and key != "comments":
                        config[section][key] = value
            else:
                config[section] = user_config[section]
        else:
            config[section] = user_config[section]

    event_log.log_event("config_loaded", path=config_path)
    return config


def save_config(config=None, config_path="config.json"):
    """
    Save the current configuration to the config file.

    Args:
        config (dict, optional): Configuration to save. If None, save current global config.
        config_path (str): Path to the config file

    Returns:
        bool: True if successful, False otherwise
    """
    if config is None:
        config = get_config()

    try:
        with open(config_path, 'w') as f:
            json.dump(config, f, indent=4)
    except OSError as e:
        event_log.log_event("config_save_failed", level=logging.WARNING,
                            path=config_path, error=e)
        return False

    event_log.log_event("config_saved", path=config_path)
    return True


def update_config(section, key, value, config_path=None):
    """
    Update a specific configuration value.

    Args:
        section (str): Configuration section (e.g., 'tolerances', 'verify')
        key (str): Configuration key within the section
        value: New value to set
        config_path (str, optional): Also persist the configuration to this file

    Returns:
        bool: True if successful, False otherwise
    """
    config = get_config()

    if section not in config:
        config[section] = {}

    config[section][key] = value
    if config_path is None:
        return True
    return save_config(config, config_path)


def apply_config(config=None):
    """
    Apply the system section to the event log.

    Args:
        config (dict, optional): Configuration to apply. If None, use the current one.
    """
    if config is None:
        config = get_config()

    system = config.get("system", {})
    event_log.configure(debug=bool(system.get("debug_mode", False)),
                        color=bool(system.get("color", True)))
    event_log.set_console_logging(bool(system.get("console", True)))
    if system.get("log_file"):
        event_log.enable_file_logging(system["log_file"])
