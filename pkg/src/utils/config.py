"""Configuration utilities for loading tolerances and reference tables."""
import os
from pathlib import Path
from typing import Dict, Optional

import yaml

from src.utils.errors import ConfigError

PROJECT_ROOT = Path(__file__).parent.parent.parent
DEFAULTS_PATH = PROJECT_ROOT / "config" / "defaults.yaml"
KNOWN_BOUNDS_PATH = PROJECT_ROOT / "config" / "known_bounds.yaml"
ENV_PREFIX = "THETA_BOUNDS_"

# Mirrors config/defaults.yaml so the library still works from an installed copy.
BUILTIN_DEFAULTS: Dict[str, float] = {
    'ceil_guard': 1e-9,
    'zero_tolerance': 1e-14,
    'normalization_tolerance': 1e-12,
    'bessel_residual': 1e-12,
    'bessel_max_iterations': 100,
    'bessel_grid_step': 0.01,
    'lp_feasibility_tolerance': 1e-9,
    'lp_iteration_cap': 100000,
    'lp_refactor_every': 50,
    'theta_max_degree': 200000,
    'delsarte_grid_factor': 10,
    'delsarte_fine_factor': 10,
    'delsarte_exchange_rounds': 40,
    'dual_tail_factor': 10,
    'table_workers': 4,
}

_INTEGER_KEYS = {
    'bessel_max_iterations', 'lp_iteration_cap', 'lp_refactor_every', 'theta_max_degree',
    'delsarte_grid_factor', 'delsarte_fine_factor', 'delsarte_exchange_rounds',
    'dual_tail_factor', 'table_workers',
}

_settings_cache: Optional[Dict[str, float]] = None


def _coerce(key: str, value, source: str):
    """Convert a raw YAML or environment value to the type used for key."""
    try:
        if key in _INTEGER_KEYS:
            number = int(value)
        else:
            number = float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"Invalid value {value!r} for '{key}' in {source}")
    if number <= 0:
        raise ConfigError(f"Value for '{key}' in {source} must be positive, got {value!r}")
    return number


def load_settings(config_path: Optional[str] = None, use_env: bool = True) -> Dict[str, float]:
    """
    Load tolerance settings from YAML, then apply environment overrides.

    Args:
        config_path: Optional path to a YAML file (defaults to config/defaults.yaml)
        use_env: If True, read .env and THETA_BOUNDS_<KEY> variables

    Returns:
        Dictionary of setting name to value
    """
    settings = dict(BUILTIN_DEFAULTS)

    if config_path is not None:
        config_file = Path(config_path)
        if not config_file.exists():
            raise FileNotFoundError(f"Configuration file not found: {config_path}")
    else:
        config_file = DEFAULTS_PATH

    if config_file.exists():
        with open(config_file, 'r', encoding='utf-8') as f:
            raw = yaml.safe_load(f) or {}
        for key, value in raw.get('defaults', {}).items():
            if key not in BUILTIN_DEFAULTS:
                raise ConfigError(f"Unknown setting '{key}' in {config_file}")
            settings[key] = _coerce(key, value, str(config_file))

    if use_env:
        try:
            from dotenv import load_dotenv
            env_path = PROJECT_ROOT / '.env'
            if env_path.exists():
                load_dotenv(env_path, override=False)
        except ImportError:
            pass
        for key in BUILTIN_DEFAULTS:
            env_name = ENV_PREFIX + key.upper()
            raw_value = os.getenv(env_name)
            if raw_value is not None and raw_value != '':
                settings[key] = _coerce(key, raw_value, env_name)

    return settings


def get_settings() -> Dict[str, float]:
    """Return the process-wide settings, loading them on first use."""
    global _settings_cache
    if _settings_cache is None:
        _settings_cache = load_settings()
    return _settings_cache


def reset_settings():
    """Forget cached settings so the next get_settings() reloads them."""
    global _settings_cache
    _settings_cache = None


def setting(key: str, override=None):
    """Return override if given, otherwise the configured value for key."""
    if override is not None:
        return override
    return get_settings()[key]


def load_known_bounds(config_path: Optional[str] = None, column: str = 'previous_best') -> Dict[int, int]:
    """
    Load one column of the Euclidean chromatic number bounds file.

    Args:
        config_path: Alternative YAML file
        column: 'previous_best' or 'published'

    Returns:
        Dictionary mapping dimension n to the integer bound in that column
    """
    config_file = Path(config_path) if config_path else KNOWN_BOUNDS_PATH
    if not config_file.exists():
        raise FileNotFoundError(f"Configuration file not found: {config_file}")

    with open(config_file, 'r', encoding='utf-8') as f:
        config = yaml.safe_load(f) or {}

    return {int(row['n']): int(row[column])
            for row in config.get('euclidean_bounds', []) if row.get(column) is not None}
