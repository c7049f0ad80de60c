"""
Tarai Config - Defaults for the tarai command line
Built-in defaults, overridden by a flat YAML file, overridden by flags
"""

import logging
import os
from dataclasses import asdict, dataclass, fields, replace
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv

from lazy_engine import DEFAULT_MAX_APPS, DEFAULT_MAX_DEPTH, LazyLimits
from strict_engine import DEFAULT_GRID_CAP, DEFAULT_STRICT_BUDGET
from tarai_core import TaraiArgumentError

logger = logging.getLogger(__name__)

CONFIG_ENV_VAR = "TARAI_CONFIG"
DEFAULT_CONFIG_PATH = "tarai.yaml"
OUTPUT_FORMATS = ("human", "json", "csv")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass(frozen=True)
class CliConfig:
    """Effective settings for one CLI run"""
    lazy_max_apps: int = DEFAULT_MAX_APPS
    lazy_max_depth: int = DEFAULT_MAX_DEPTH
    strict_budget: int = DEFAULT_STRICT_BUDGET
    grid_cap: int = DEFAULT_GRID_CAP
    output_format: str = "human"
    workers: int = os.cpu_count() or 1
    seed: int = 1
    log_level: str = "INFO"

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if f.type is int and (isinstance(value, bool) or not isinstance(value, int)):
                raise TaraiArgumentError(f"config key {f.name} must be an integer, got {value!r}")
        if self.output_format not in OUTPUT_FORMATS:
            raise TaraiArgumentError(
                f"output_format must be one of {OUTPUT_FORMATS}, got {self.output_format!r}"
            )
        if not isinstance(self.log_level, str) or self.log_level.upper() not in LOG_LEVELS:
            raise TaraiArgumentError(f"log_level must be one of {LOG_LEVELS}, got {self.log_level!r}")
        for name in ("lazy_max_apps", "lazy_max_depth", "strict_budget", "grid_cap", "workers"):
            if getattr(self, name) <= 0:
                raise TaraiArgumentError(f"config key {name} must be positive, got {getattr(self, name)}")

    @property
    def lazy_limits(self) -> LazyLimits:
        return LazyLimits(max_apps=self.lazy_max_apps, max_depth=self.lazy_max_depth)

    def with_overrides(self, **overrides: Any) -> "CliConfig":
        """Apply flag values; None means the flag was not given"""
        given = {key: value for key, value in overrides.items() if value is not None}
        return replace(self, **given)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def resolve_config_path(path: Optional[str] = None) -> str:
    """Explicit path, else $TARAI_CONFIG (also read from .env), else tarai.yaml"""
    if path:
        return path
    load_dotenv()
    return os.getenv(CONFIG_ENV_VAR, DEFAULT_CONFIG_PATH)


def load_config(path: Optional[str] = None) -> CliConfig:
    """
    Load CliConfig from a flat YAML mapping

    A missing file yields the built-in defaults. Unknown keys are ignored with a warning.
    """
    config_path = resolve_config_path(path)
    if not os.path.exists(config_path):
        logger.debug(f"No config file at {config_path}; using built-in defaults")
        return CliConfig()

    with open(config_path, "r", encoding="utf-8") as f:
        try:
            raw = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise TaraiArgumentError(f"cannot parse config file {config_path}: {e}")

    if not isinstance(raw, dict):
        raise TaraiArgumentError(f"config file {config_path} must hold a key-value mapping")

    known = {f.name for f in fields(CliConfig)}
    for key in sorted(set(raw) - known):
        logger.warning(f"Ignoring unknown config key '{key}' in {config_path}")

    config = CliConfig(**{key: value for key, value in raw.items() if key in known})
    logger.info(f"Loaded configuration from {config_path}")
    return config
