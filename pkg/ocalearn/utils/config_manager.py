"""
Configuration manager for ocalearn.

Holds the learning, teacher, generation and bench defaults, and merges a
user YAML file over them.
"""

import copy
import logging
import os
from typing import Any, Dict, Optional

import appdirs
import jsonschema
import yaml

from ocalearn.errors import InputError

logger = logging.getLogger(__name__)

THREADS_ENV_VAR = "OCALEARN_THREADS"

_POSITIVE_INT = {"type": "integer", "minimum": 1}
_OPTIONAL_POSITIVE_INT = {"type": ["integer", "null"], "minimum": 1}

CONFIG_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "learning": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "max_rounds": {"type": "integer", "minimum": 0},
                "timeout_s": {"type": "number", "exclusiveMinimum": 0},
                "verify_lemmas": {"type": "boolean"},
            },
        },
        "teacher": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "max_cex_len": _POSITIVE_INT,
                "max_configurations": _POSITIVE_INT,
                "counter_cutoff": _OPTIONAL_POSITIVE_INT,
            },
        },
        "generation": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "max_restarts": _POSITIVE_INT,
                "reach_cutoff": _OPTIONAL_POSITIVE_INT,
            },
        },
        "bench": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "threads": _OPTIONAL_POSITIVE_INT,
                "verify_len": {"type": "integer", "minimum": 0},
            },
        },
    },
}


class ConfigManager:
    """
    Manages ocalearn configuration settings.

    Defaults live in memory; a YAML file (the user's default one, or an explicit
    path) is validated and deep-merged over them. Nothing is written to disk
    unless export_config is called.
    """

    def __init__(self, config_file: Optional[str] = None):
        """
        Initialize the configuration manager.

        Args:
            config_file: Explicit YAML file. When None, the per-user file is used
                if it exists.
        """
        self.default_config: Dict[str, Dict[str, Any]] = {
            "learning": {
                "max_rounds": 200,
                "timeout_s": 300.0,
                "verify_lemmas": True,
            },
            "teacher": {
                "max_cex_len": 256,
                "max_configurations": 500000,
                "counter_cutoff": None,
            },
            "generation": {
                "max_restarts": 10000,
                "reach_cutoff": None,
            },
            "bench": {
                "threads": None,
                "verify_len": 0,
            },
        }
        self.memory_config = copy.deepcopy(self.default_config)

        if config_file is None:
            default_file = self.default_config_file()
            if os.path.exists(default_file):
                self.load(default_file)
        else:
            self.load(config_file)

        self._apply_environment()

    @staticmethod
    def default_config_file() -> str:
        return os.path.join(appdirs.user_config_dir("ocalearn"), "config.yaml")

    def load(self, file_path: str) -> None:
        """
        Validate a YAML file and merge it over the current configuration.

        Args:
            file_path: Path to the YAML file

        Raises:
            InputError: unreadable file, malformed YAML or schema violation
        """
        try:
            with open(file_path, 'r', encoding='utf-8') as f:
                loaded = yaml.safe_load(f)
        except (OSError, yaml.YAMLError) as e:
            raise InputError(f"Cannot read configuration {file_path}: {e}") from e

        if loaded is None:
            loaded = {}
        try:
            jsonschema.validate(loaded, CONFIG_SCHEMA)
        except jsonschema.ValidationError as e:
            raise InputError(f"Invalid configuration {file_path}: {e.message}") from e

        self.memory_config = self._deep_merge(self.memory_config, loaded)
        logger.debug(f"Configuration loaded from {file_path}")

    def _apply_environment(self) -> None:
        threads = os.environ.get(THREADS_ENV_VAR)
        if not threads:
            return
        try:
            value = int(threads)
        except ValueError:
            logger.warning(f"Ignoring non-integer {THREADS_ENV_VAR}={threads!r}")
            return
        if value < 1:
            logger.warning(f"Ignoring non-positive {THREADS_ENV_VAR}={value}")
            return
        self.memory_config["bench"]["threads"] = value

    def get(self, section: str, key: str, default: Any = None) -> Any:
        """
        Get a configuration value from a section.

        Args:
            section: The section name
            key: The configuration key in the section
            default: Default value if key doesn't exist

        Returns:
            The configuration value or default
        """
        return self.memory_config.get(section, {}).get(key, default)

    def get_config(self, key: str, default: Any = None) -> Any:
        """
        Get a configuration value by dotted key ("section.key").

        Args:
            key: The configuration key
            default: Default value if key doesn't exist

        Returns:
            The configuration value or default
        """
        if "." not in key:
            return default
        section, subkey = key.split(".", 1)
        return self.get(section, subkey, default)

    @property
    def threads(self) -> int:
        return self.get("bench", "threads") or os.cpu_count() or 1

    def _deep_merge(self, target: Dict, source: Dict) -> Dict:
        for key, value in source.items():
            if key in target and isinstance(target[key], dict) and isinstance(value, dict):
                self._deep_merge(target[key], value)
            else:
                target[key] = value
        return target

    def dump(self) -> str:
        """Return the effective configuration as YAML text."""
        return yaml.safe_dump(self.memory_config, sort_keys=True)

    def export_config(self, file_path: str) -> None:
        """
        Write the effective configuration as YAML.

        Args:
            file_path: Destination path
        """
        directory = os.path.dirname(file_path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(file_path, 'w', encoding='utf-8') as f:
            f.write(self.dump())
