"""
Configuration module for harmonicqc.

This module manages loading configuration from environment variables
and the bundled map documents from the maps directory.
"""
import os
import json
import logging
from typing import Dict, Any, Optional, List, Callable
from dotenv import load_dotenv
import pathlib

# Setup central logging configuration
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - [%(module)s] - %(message)s')
logger = logging.getLogger('harmonicqc')

# Directory containing bundled map documents
SCRIPT_DIR = pathlib.Path(__file__).parent.absolute()
MAPS_DIR = pathlib.Path(SCRIPT_DIR) / "maps"

# Default configuration values
DEFAULT_CONFIG: Dict[str, Any] = {
    "grid_radii": 200,
    "grid_angles": 720,
    "r_min": 1e-3,
    "r_max": 10.0,

    "pairs": 10000,
    "seed": 0,

    "figure_points": 512,
    "figure_radii": [0.2, 0.4, 0.6, 0.8, 1.0, 1.25, 1.6, 2.0],
    "figure_rays": 12,

    "profiles": "starlike,convex,strongly-starlike"
}

# Mapping of preset identifiers to their file names
PRESET_FILES: Dict[str, str] = {
    "identity": "identity.json",
    "sigma-example": "sigma_example.json",
    "strongly-starlike-f2": "strongly_starlike_f2.json"
}

# Environment variable name, config key and parser for each override
ENV_OVERRIDES: List[tuple] = [
    ("HARMONICQC_GRID_RADII", "grid_radii", int),
    ("HARMONICQC_GRID_ANGLES", "grid_angles", int),
    ("HARMONICQC_R_MIN", "r_min", float),
    ("HARMONICQC_R_MAX", "r_max", float),
    ("HARMONICQC_PAIRS", "pairs", int),
    ("HARMONICQC_SEED", "seed", int),
    ("HARMONICQC_FIGURE_POINTS", "figure_points", int),
    ("HARMONICQC_FIGURE_RADII", "figure_radii", lambda s: [float(r) for r in s.split(",") if r.strip()]),
    ("HARMONICQC_FIGURE_RAYS", "figure_rays", int),
    ("HARMONICQC_PROFILES", "profiles", str)
]

# Cache for loaded configuration
_CONFIG_CACHE: Optional[Dict[str, Any]] = None

# Cache for loaded presets
_PRESETS_CACHE: Optional[Dict[str, Dict[str, Any]]] = None

def _parse_override(name: str, raw: str, parser: Callable[[str], Any]) -> Optional[Any]:
    """
    Parse one environment override, returning None when the value is invalid.

    Args:
        name: Environment variable name (for diagnostics)
        raw: Raw string value
        parser: Conversion function

    Returns:
        Optional[Any]: Parsed value, or None if parsing failed
    """
    try:
        return parser(raw)
    except ValueError as e:
        logger.warning(f"Ignoring invalid value for {name}: {raw!r} ({e})")
        return None

def load_env_config() -> Dict[str, Any]:
    """
    Load configuration from environment variables (.env file).

    This function reads configuration values from environment variables,
    falling back to default values when environment variables are not set.

    Returns:
        Dict[str, Any]: Dictionary with the loaded configuration
    """
    load_dotenv()

    # Start with the default config
    loaded_config = DEFAULT_CONFIG.copy()

    # Override defaults with environment variables if present
    for env_name, key, parser in ENV_OVERRIDES:
        raw = os.getenv(env_name)
        if not raw:
            continue
        value = _parse_override(env_name, raw, parser)
        if value is not None:
            loaded_config[key] = value

    logger.info("Configuration loaded from environment variables.")
    logger.debug(f"Effective configuration: {loaded_config}")

    return loaded_config

def load_presets() -> Dict[str, Dict[str, Any]]:
    """
    Load the bundled map documents from the maps directory.

    Each file listed in PRESET_FILES is read as JSON and stored under its
    preset identifier. Unreadable files are logged and skipped.

    Returns:
        Dict[str, Dict[str, Any]]: Raw document dictionaries keyed by preset name
    """
    presets: Dict[str, Dict[str, Any]] = {}

    if not MAPS_DIR.is_dir():
        logger.error(f"Maps directory '{MAPS_DIR}' not found.")
        return presets

    for key, filename in PRESET_FILES.items():
        filepath = MAPS_DIR / filename
        try:
            with open(filepath, 'r', encoding='utf-8') as f:
                presets[key] = json.load(f)
        except FileNotFoundError:
            logger.error(f"Preset file not found: {filepath}")
        except json.JSONDecodeError as e:
            logger.error(f"Preset file {filepath} is not valid JSON: {e}")

    logger.debug(f"Loaded {len(presets)} map presets.")
    return presets

def get_config() -> Dict[str, Any]:
    """
    Get the configuration from .env.

    The configuration is loaded once and the cached version is returned on
    subsequent calls.

    Returns:
        Dict[str, Any]: Current configuration dictionary
    """
    global _CONFIG_CACHE

    if _CONFIG_CACHE is None:
        _CONFIG_CACHE = load_env_config()

    return _CONFIG_CACHE

def reload_config() -> Dict[str, Any]:
    """
    Force reload of configuration from .env.

    Returns:
        Dict[str, Any]: Updated configuration dictionary
    """
    global _CONFIG_CACHE
    _CONFIG_CACHE = load_env_config()
    return _CONFIG_CACHE

def get_presets() -> Dict[str, Dict[str, Any]]:
    """
    Get the bundled map documents, loading them on first use.

    Returns:
        Dict[str, Dict[str, Any]]: Raw document dictionaries keyed by preset name
    """
    global _PRESETS_CACHE

    if _PRESETS_CACHE is None:
        _PRESETS_CACHE = load_presets()

    return _PRESETS_CACHE

def parse_profile_list(value: Optional[str]) -> List[str]:
    """
    Split a comma separated profile list into normalized profile names.

    Args:
        value: String such as "starlike, convex"

    Returns:
        List[str]: Lower-case profile names, duplicates removed, order kept
    """
    if not value:
        return []

    names: List[str] = []
    for part in value.split(','):
        name = part.strip().lower()
        if name and name not in names:
            names.append(name)
    return names
