"""
Configuration management for the penalise package.
"""
import json
from pathlib import Path
from typing import Any, Dict, Optional, Union

from dotenv import load_dotenv
from pydantic import ValidationError
from pydantic_settings import BaseSettings, SettingsConfigDict

from penalise.exceptions import ConfigurationError
from penalise.models.config import RunConfig


# Load environment variables from .env file if it exists
load_dotenv()


class EnvSettings(BaseSettings):
    """Settings read from PENALISE_* environment variables."""
    model_config = SettingsConfigDict(env_prefix="PENALISE_", extra="ignore")

    seed: Optional[int] = None


def load_config_from_file(file_path: Union[str, Path]) -> Dict[str, Any]:
    """
    Load configuration from a JSON file.

    Args:
        file_path: Path to the configuration file

    Returns:
        Dictionary containing the configuration

    Raises:
        ConfigurationError: If the file is missing, unreadable or not a JSON object
    """
    try:
        with open(file_path, 'r') as f:
            data = json.load(f)
    except FileNotFoundError as e:
        raise ConfigurationError(f"Configuration file not found: {file_path}") from e
    except json.JSONDecodeError as e:
        raise ConfigurationError(
            f"Invalid JSON in {file_path} at line {e.lineno}, column {e.colno}: {e.msg}"
        ) from e
    if not isinstance(data, dict):
        raise ConfigurationError(f"Configuration file {file_path} must hold a JSON object")
    return data


def merge_config(base: Dict[str, Any], overrides: Dict[str, Any]) -> Dict[str, Any]:
    """Recursively merge overrides into a copy of base; None values are skipped."""
    merged = dict(base)
    for key, value in overrides.items():
        if value is None:
            continue
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = merge_config(merged[key], value)
        else:
            merged[key] = value
    return merged


def get_config(
    config_file: Optional[Union[str, Path]] = None,
    overrides: Optional[Dict[str, Any]] = None,
) -> RunConfig:
    """
    Get the run configuration.

    Precedence: defaults < config file < PENALISE_SEED < overrides.

    Args:
        config_file: Path to a RunConfig-shaped JSON file (optional)
        overrides: Nested values from command-line flags (optional)

    Returns:
        RunConfig object

    Raises:
        ConfigurationError: If the file or the merged values are invalid
    """
    config_data: Dict[str, Any] = {}

    # Load from file if provided
    if config_file:
        config_data = load_config_from_file(config_file)

    env = EnvSettings()
    if env.seed is not None:
        config_data = merge_config(config_data, {"suite": {"seed": env.seed}})

    config_data = merge_config(config_data, overrides or {})

    try:
        return RunConfig(**config_data)
    except ValidationError as e:
        # Name the offending keys to give a helpful message
        problems = []
        for error in e.errors():
            location = ".".join(str(part) for part in error["loc"])
            problems.append(f"{location}: {error['msg']}")
        raise ConfigurationError(f"Invalid configuration: {'; '.join(problems)}") from e
