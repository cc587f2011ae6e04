"""
Run configuration: flat key=value files merged with command-line flags into a RunConfig.
"""
import logging
from pathlib import Path
from typing import Any, Dict, Optional

from pydantic import ValidationError

from schemas.run_schemas import RunConfig
from utils.errors import ConfigError

logger = logging.getLogger(__name__)

LIST_KEYS = {"x", "delta_exponents"}


def _normalize_key(key: str) -> str:
    return key.strip().replace("-", "_")


def read_config_file(path: Path) -> Dict[str, Any]:
    """
    Parse `key = value` lines; `#` starts a comment, blank lines are ignored.

    List-valued keys take comma-separated values.
    """
    if not path.is_file():
        raise ConfigError("config", f"config file not found: {path}")
    values: Dict[str, Any] = {}
    for number, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {number}", "expected key=value")
        key, value = line.split("=", 1)
        key = _normalize_key(key)
        if key not in RunConfig.model_fields:
            raise ConfigError(key, "unknown key")
        value = value.strip()
        values[key] = [v.strip() for v in value.split(",") if v.strip()] if key in LIST_KEYS else value
    logger.debug(f"Read {len(values)} keys from {path}")
    return values


def build_config(values: Dict[str, Any]) -> RunConfig:
    """Validate a resolved mapping; pydantic errors surface as ConfigError naming the key."""
    unknown = [key for key in values if key not in RunConfig.model_fields]
    if unknown:
        raise ConfigError(unknown[0], "unknown key")
    try:
        return RunConfig(**values)
    except ValidationError as e:
        error = e.errors()[0]
        key = ".".join(str(part) for part in error["loc"]) or "config"
        message = error["msg"].removeprefix("Value error, ")
        raise ConfigError(key, message) from e


def parse_config(flags: Dict[str, Any], config_file: Optional[Path] = None) -> RunConfig:
    """
    Merge a config file with command-line flags; flags win, unset flags (None) are ignored.

    Raises:
        ConfigError: unknown key, type mismatch or violated constraint
    """
    values: Dict[str, Any] = read_config_file(config_file) if config_file is not None else {}
    for key, value in flags.items():
        if value is None or (isinstance(value, tuple) and not value):
            continue
        values[_normalize_key(key)] = list(value) if isinstance(value, tuple) else value
    return build_config(values)
