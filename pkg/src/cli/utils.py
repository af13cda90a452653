"""Utilities for the entdist CLI."""

import json
import logging
import os
import re
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import click
import structlog
import yaml

from ..domain.exceptions import EntDistError
from .settings import EntDistSettings, resolve_threads


class EntDistContext:
    """Context object passed between CLI commands."""

    def __init__(self, settings: EntDistSettings, config_path: Optional[str] = None):
        """Initialize context.

        Args:
            settings: Validated configuration
            config_path: Path of the configuration file, if one was given
        """
        self.settings = settings
        self.config_path = config_path

    @property
    def threads(self) -> int:
        return resolve_threads(self.settings.sweep.threads)


def setup_logging(level: str, log_file: Optional[str] = None) -> None:
    """Setup logging configuration.

    Console output goes to stderr; stdout carries command results only.

    Args:
        level: Logging level (DEBUG, INFO, WARNING, ERROR)
        log_file: Optional log file path
    """
    formatter = logging.Formatter("%(message)s")

    root_logger = logging.getLogger()
    root_logger.setLevel(getattr(logging, level))

    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)
    root_logger.addHandler(console_handler)

    if log_file:
        file_handler = logging.FileHandler(log_file)
        file_handler.setFormatter(formatter)
        root_logger.addHandler(file_handler)

    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.processors.TimeStamper(fmt="%Y-%m-%d %H:%M:%S"),
            structlog.processors.format_exc_info,
            structlog.processors.KeyValueRenderer(key_order=["timestamp", "level", "event"]),
        ],
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=False,
    )


def load_config(config_path: Optional[str]) -> EntDistSettings:
    """Load and validate configuration from a JSON or YAML file.

    Args:
        config_path: Path to configuration file, or None for defaults

    Returns:
        Validated settings

    Raises:
        EntDistError: If the file cannot be parsed or holds invalid values
    """
    if config_path is None:
        return EntDistSettings()

    path = Path(config_path)
    if not path.exists():
        raise EntDistError(f"Configuration file not found: {path}", "config")

    text = path.read_text(encoding="utf-8")
    try:
        if path.suffix.lower() in (".yaml", ".yml"):
            data = yaml.safe_load(text)
        else:
            data = json.loads(text)
    except (json.JSONDecodeError, yaml.YAMLError) as e:
        raise EntDistError(f"Invalid configuration file {path}: {e}", "config") from e

    if data is not None and not isinstance(data, dict):
        raise EntDistError(f"Configuration file {path} must hold a mapping", "config")
    return EntDistSettings.from_mapping(_expand_env_vars(data or {}))


def _expand_env_vars(obj: Any) -> Any:
    """Recursively expand ${VAR} and ${VAR:-default} in configuration strings."""
    if isinstance(obj, dict):
        return {key: _expand_env_vars(value) for key, value in obj.items()}
    if isinstance(obj, list):
        return [_expand_env_vars(item) for item in obj]
    if isinstance(obj, str):
        def replacer(match: "re.Match[str]") -> str:
            var_expr = match.group(1)
            if ":-" in var_expr:
                var_name, default = var_expr.split(":-", 1)
                return os.environ.get(var_name, default)
            return os.environ.get(var_expr, match.group(0))

        return re.sub(r"\$\{([^}]+)\}", replacer, obj)
    return obj


def format_table(headers: List[str], rows: List[List[Any]], max_width: Optional[int] = None) -> str:
    """Format data as a text table.

    Args:
        headers: List of column headers
        rows: List of row data (list of lists)
        max_width: Maximum width for each column

    Returns:
        Formatted table string
    """
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(str(cell)))

    if max_width:
        widths = [min(w, max_width) for w in widths]

    format_str = " | ".join(f"{{:<{w}}}" for w in widths)
    lines = [format_str.format(*headers), "-" * (sum(widths) + 3 * (len(headers) - 1))]

    for row in rows:
        cells = []
        for i, cell in enumerate(row):
            cell_str = str(cell)
            if len(cell_str) > widths[i]:
                cell_str = cell_str[:widths[i] - 3] + "..."
            cells.append(cell_str)
        lines.append(format_str.format(*cells).rstrip())

    return "\n".join(lines)


def usage_error(error: EntDistError) -> click.UsageError:
    """Turn a domain error caused by user input into a click usage error (exit 2)."""
    return click.UsageError(str(error))
