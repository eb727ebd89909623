"""YAML + .env configuration loader."""

from __future__ import annotations

import os
from pathlib import Path
from typing import Any

import yaml
from dotenv import load_dotenv

PACKAGE_DIR = Path(__file__).resolve().parent
DEFAULTS_PATH = PACKAGE_DIR / "config" / "defaults.yaml"


def _find_project_root() -> Path | None:
    """Walk up from this file to find the directory containing config.yaml."""
    current = PACKAGE_DIR.parent
    for _ in range(10):
        if (current / "config.yaml").exists():
            return current
        if current.parent == current:
            break
        current = current.parent
    return None


PROJECT_ROOT = _find_project_root()


def load_env() -> None:
    """Load .env file from project root (or the working directory)."""
    root = PROJECT_ROOT or Path.cwd()
    load_dotenv(root / ".env")


def _read_yaml(path: Path) -> dict[str, Any]:
    with open(path) as f:
        data = yaml.safe_load(f) or {}
    if not isinstance(data, dict):
        raise ValueError(f"{path} must contain a mapping at top level, got {type(data).__name__}")
    return data


def load_yaml_config() -> dict[str, Any]:
    """Load packaged defaults and merge the project (or GAUGEKIT_CONFIG) file over them."""
    merged = _read_yaml(DEFAULTS_PATH)

    override = get_env("GAUGEKIT_CONFIG")
    if override:
        config_path = Path(override)
        if not config_path.exists():
            raise FileNotFoundError(f"GAUGEKIT_CONFIG points to missing file {config_path}")
    elif PROJECT_ROOT is not None:
        config_path = PROJECT_ROOT / "config.yaml"
    else:
        return merged

    for section, values in _read_yaml(config_path).items():
        if isinstance(values, dict) and isinstance(merged.get(section), dict):
            merged[section] = {**merged[section], **values}
        else:
            merged[section] = values
    return merged


def get_env(key: str, default: str | None = None) -> str | None:
    """Get an environment variable."""
    return os.environ.get(key, default)


def get_output_dir() -> Path:
    """Return the report directory, preferring GAUGEKIT_OUTPUT_DIR."""
    configured = settings.get("reports", {}).get("output_dir", "reports")
    return Path(get_env("GAUGEKIT_OUTPUT_DIR", configured))


def tolerance(kind: str) -> float:
    """Look up a named tolerance from the ``tolerances`` section."""
    tols = settings.get("tolerances", {})
    if kind not in tols:
        raise KeyError(f"Unknown tolerance {kind!r}; configured: {sorted(tols)}")
    return float(tols[kind])


# Load on import
load_env()
settings: dict[str, Any] = load_yaml_config()
