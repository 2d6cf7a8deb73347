"""
Utility helpers – configuration loading and logging setup.
"""

from __future__ import annotations

import logging
import os
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Any, Dict

import yaml

DEFAULT_CONFIG: Dict[str, Any] = {
    "output": {"format": "text"},
    "power_table": {"n_max": 8},
    "paths": {"export_dir": "data", "log_dir": "logs"},
    "logging": {"level": "INFO", "to_file": True},
}


# ── Configuration ────────────────────────────────────────────


def load_config(config_path: str | Path | None = None) -> Dict[str, Any]:
    """Load the YAML configuration file and return it as a dictionary.

    Resolution order for *config_path*:
      1. Explicit argument.
      2. ``WEIERSTRASS_INT_CONFIG`` environment variable.
      3. ``config/settings.yaml`` relative to the project root.

    Sections missing from the file are filled in from :data:`DEFAULT_CONFIG`.

    Parameters
    ----------
    config_path : str | Path | None
        Optional explicit path to the YAML configuration file.

    Returns
    -------
    dict
        Parsed configuration dictionary.

    Raises
    ------
    FileNotFoundError
        If the resolved configuration file does not exist.
    yaml.YAMLError
        If the file contains invalid YAML.
    """
    if config_path is None:
        config_path = os.getenv(
            "WEIERSTRASS_INT_CONFIG",
            str(Path(__file__).resolve().parent.parent / "config" / "settings.yaml"),
        )

    config_path = Path(config_path)
    if not config_path.exists():
        raise FileNotFoundError(f"Configuration file not found: {config_path}")

    with open(config_path, "r", encoding="utf-8") as fh:
        loaded: Dict[str, Any] = yaml.safe_load(fh) or {}

    config = {section: dict(values) for section, values in DEFAULT_CONFIG.items()}
    for section, values in loaded.items():
        if isinstance(values, dict) and section in config:
            config[section].update(values)
        else:
            config[section] = values
    return config


# ── Logging ──────────────────────────────────────────────────


def setup_logging(
    log_dir: str | Path = "logs",
    log_level: int | str = logging.INFO,
    max_bytes: int = 5 * 1024 * 1024,
    backup_count: int = 5,
    to_file: bool = True,
) -> logging.Logger:
    """Configure and return the application-wide logger.

    Log records go to a rotating file under *log_dir* (when *to_file*) and
    to stderr; stdout is reserved for command output.

    Parameters
    ----------
    log_dir : str | Path
        Directory where log files are written.
    log_level : int | str
        Minimum logging level (default ``logging.INFO``).
    max_bytes : int
        Maximum size of a single log file before rotation (default 5 MB).
    backup_count : int
        Number of rotated log files to keep.
    to_file : bool
        Whether to attach the rotating file handler.

    Returns
    -------
    logging.Logger
        Configured root logger for the application.
    """
    if isinstance(log_level, str):
        log_level = logging.getLevelName(log_level.upper())

    logger = logging.getLogger("weierstrass_int")
    logger.setLevel(log_level)

    # Avoid duplicate handlers when the function is called multiple times
    if logger.handlers:
        return logger

    formatter = logging.Formatter(
        fmt="%(asctime)s | %(levelname)-8s | %(name)s | %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )

    if to_file:
        log_dir = ensure_directory(log_dir)
        file_handler = RotatingFileHandler(
            filename=log_dir / "weierstrass_int.log",
            maxBytes=max_bytes,
            backupCount=backup_count,
            encoding="utf-8",
        )
        file_handler.setLevel(log_level)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(log_level)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    return logger


# ── Helpers ──────────────────────────────────────────────────


def ensure_directory(path: str | Path) -> Path:
    """Create a directory (and parents) if it doesn't already exist."""
    p = Path(path)
    p.mkdir(parents=True, exist_ok=True)
    return p
