"""Logging configuration."""

import logging
import sys
from pathlib import Path
from typing import Optional

from app.config import get_settings


def setup_logging(level: Optional[str] = None, log_file: Optional[str] = None) -> None:
    """Configure application logging.

    Log records go to stderr; stdout carries the command output (CSV/JSON).
    """
    settings = get_settings()
    level_name = (level or settings.log_level).upper()
    log_file = log_file or settings.log_file

    log_format = (
        "%(asctime)s | %(levelname)-8s | %(name)s:%(funcName)s:%(lineno)d | %(message)s"
    )
    date_format = "%Y-%m-%d %H:%M:%S"

    log_level = getattr(logging, level_name, logging.WARNING)

    handlers: list[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        path = Path(log_file)
        path.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(path, encoding="utf-8"))

    logging.basicConfig(
        level=log_level,
        format=log_format,
        datefmt=date_format,
        handlers=handlers,
        force=True,
    )

    # Reduce noise from external libraries
    logging.getLogger("mpmath").setLevel(logging.WARNING)
    logging.getLogger("hypothesis").setLevel(logging.WARNING)

    logger = logging.getLogger(__name__)
    logger.debug(f"Logging configured with level: {level_name}")
