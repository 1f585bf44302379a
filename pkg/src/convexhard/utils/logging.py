"""Logging configuration for the convexhard toolkit.

Console output goes to stderr; stdout is reserved for JSON documents.
"""

import logging
import sys
from pathlib import Path
from typing import List, Optional

DEFAULT_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


def _resolve_level(level: str) -> int:
    numeric = getattr(logging, level.upper(), None)
    return numeric if isinstance(numeric, int) else logging.INFO


def _handlers(
    level: int, formatter: logging.Formatter, log_file: Optional[str]
) -> List[logging.Handler]:
    console = logging.StreamHandler(sys.stderr)
    console.setLevel(level)
    handlers: List[logging.Handler] = [console]
    if log_file:
        path = Path(log_file)
        path.parent.mkdir(parents=True, exist_ok=True)
        # the file records everything, the console only the chosen level
        to_file = logging.FileHandler(path)
        to_file.setLevel(logging.DEBUG)
        handlers.append(to_file)
    for handler in handlers:
        handler.setFormatter(formatter)
    return handlers


def setup_logging(
    level: str = "INFO", log_file: Optional[str] = None, fmt: Optional[str] = None
) -> None:
    """Configure the root logger with a stderr handler and an optional file.

    Args:
        level: Logging level (DEBUG, INFO, WARNING, ERROR); unknown names
            fall back to INFO
        log_file: Optional file path for log output
        fmt: Record format, usually the ``logging.format`` config value;
            defaults to DEFAULT_FORMAT
    """
    numeric_level = _resolve_level(level)
    formatter = logging.Formatter(fmt or DEFAULT_FORMAT, datefmt=DATE_FORMAT)

    root_logger = logging.getLogger()
    for old in list(root_logger.handlers):
        root_logger.removeHandler(old)
        if isinstance(old, logging.FileHandler):
            old.close()
    for handler in _handlers(numeric_level, formatter, log_file):
        root_logger.addHandler(handler)
    root_logger.setLevel(logging.DEBUG if log_file else numeric_level)

    logging.getLogger("convexhard").debug(
        f"Logging at {logging.getLevelName(numeric_level)}"
        + (f", also to {log_file}" if log_file else "")
    )
