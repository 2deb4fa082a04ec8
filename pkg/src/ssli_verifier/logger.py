"""logger.py
Logger setup for the ssli-verifier library and CLI, configured from parameters or `SSLI_LOG_*` environment variables.

Console output goes to stderr so stdout stays reserved for reports.
"""

import logging
import os
import pathlib
from logging.handlers import RotatingFileHandler
from sys import stderr

from .utils import get_bool_property, get_int_property

# Names of loggers that were already configured
_configured: set[str] = set()

DEFAULT_LOGGER_NAME = "ssli"


def _default_log_file() -> str:
    return str(pathlib.Path.home() / "logs" / "ssli-verifier" / "ssli.log")


def get_logger(name: str = DEFAULT_LOGGER_NAME,
               log_level: str | None = None,
               log_console_enabled: bool | None = None,
               log_file_enabled: bool | None = None,
               log_file: str | None = None,
               log_pattern: str | None = None,
               max_bytes: int | None = None,
               backup_count: int | None = None,
               ) -> logging.Logger:
    """Get or configure a logger.
    Note, if the logger was configured before, it is returned without reconfiguration; use `set_level` to change
    the level of an existing logger.

    Args:
        :param name:                Name of the logger (default: "ssli").
        :param log_level:           Logging level (default: from SSLI_LOG_LEVEL env var or WARNING).
        :param log_console_enabled: Whether logging to stderr is enabled (default: from SSLI_LOG_CONSOLE_ENABLED or True).
        :param log_file_enabled:    Whether logging to file is enabled (default: from SSLI_LOG_FILE_ENABLED or False).
        :param log_file:            Log file path (default: from SSLI_LOG_FILE or ~/logs/ssli-verifier/ssli.log).
        :param log_pattern:         Log pattern (default: from SSLI_LOG_PATTERN or a standard pattern).
        :param max_bytes:           Max bytes per log file before rotation (default: from SSLI_LOG_MAX_BYTES or 10MB).
        :param backup_count:        Number of rotated files to keep (default: from SSLI_LOG_BACKUP_COUNT or 5).

    Returns:
        The configured logger instance.
    """

    if name in _configured:
        return logging.getLogger(name)

    if log_console_enabled is None:
        log_console_enabled = get_bool_property({}, "console_enabled", "SSLI_LOG_CONSOLE_ENABLED", True)
    if log_file_enabled is None:
        log_file_enabled = get_bool_property({}, "file_enabled", "SSLI_LOG_FILE_ENABLED", False)

    log = logging.getLogger(name)
    # Records stop here; the CLI owns stderr formatting
    log.propagate = False

    log_level_str = (log_level or os.getenv("SSLI_LOG_LEVEL", "WARNING")).strip().upper()
    log.setLevel(getattr(logging, log_level_str, logging.WARNING))

    if not log_file_enabled and not log_console_enabled:
        log.addHandler(logging.NullHandler())
        _configured.add(name)
        return log

    log_pattern = log_pattern if log_pattern and log_pattern.strip() \
        else os.getenv("SSLI_LOG_PATTERN", "%(asctime)s %(levelname)s [%(threadName)s] %(name)s: %(message)s")
    formatter = logging.Formatter(log_pattern)

    if log_file_enabled:
        if not log_file or not log_file.strip():
            log_file = os.getenv("SSLI_LOG_FILE") or _default_log_file()
        max_bytes = max_bytes if max_bytes is not None and max_bytes > 0 \
            else get_int_property({}, "max_bytes", "SSLI_LOG_MAX_BYTES", 10 * 1024 * 1024)
        backup_count = backup_count if backup_count is not None and backup_count > 0 \
            else get_int_property({}, "backup_count", "SSLI_LOG_BACKUP_COUNT", 5)

        log_dir = os.path.dirname(log_file)
        if log_dir:
            os.makedirs(log_dir, exist_ok=True)

        file_handler = RotatingFileHandler(log_file, maxBytes=max_bytes, backupCount=backup_count)
        file_handler.setFormatter(formatter)
        log.addHandler(file_handler)
        log.debug(f"File logging enabled. Name: {name}, Level: {log_level_str}, File: {log_file}, "
                  f"max_bytes: {max_bytes}, backups: {backup_count}.")

    if log_console_enabled:
        console_handler = logging.StreamHandler(stderr)
        console_handler.setFormatter(formatter)
        log.addHandler(console_handler)

    _configured.add(name)
    return log


def set_level(level: str | int, name: str = DEFAULT_LOGGER_NAME) -> None:
    """Changes the level of a (possibly already configured) logger."""

    log = get_logger(name)
    if isinstance(level, str):
        level = getattr(logging, level.strip().upper(), logging.WARNING)
    log.setLevel(level)
