# etech/core/logging.py
"""Logging configuration for etech."""

import logging
import os
import sys
from logging.handlers import RotatingFileHandler
from typing import Optional

from rich.logging import RichHandler

PACKAGE_LOGGER = "etech"


def setup_logging(
    log_file: Optional[str] = None, verbose: bool = False, style: bool = True
) -> logging.Logger:
    """Set up logging configuration.

    Args:
        log_file: Optional path to log file
        verbose: Whether to enable verbose logging
        style: Whether to route console output through Rich

    Returns:
        logging.Logger: Configured package logger
    """
    if log_file:
        log_dir = os.path.dirname(log_file)
        if log_dir:
            os.makedirs(log_dir, exist_ok=True)

    logger = logging.getLogger(PACKAGE_LOGGER)
    logger.setLevel(logging.DEBUG if verbose or log_file else logging.INFO)
    logger.handlers = []

    detailed_formatter = logging.Formatter(
        "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    )

    console_handler: logging.Handler
    if style:
        console_handler = RichHandler(
            rich_tracebacks=True, markup=False, show_time=False, show_path=False
        )
        console_handler.setFormatter(logging.Formatter("%(message)s"))
    else:
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
    console_handler.setLevel(logging.DEBUG if verbose else logging.INFO)
    logger.addHandler(console_handler)

    if log_file:
        file_handler = RotatingFileHandler(
            log_file,
            maxBytes=10 * 1024 * 1024,  # 10MB
            backupCount=5,
            encoding="utf-8",
        )
        file_handler.setFormatter(detailed_formatter)
        # file keeps everything
        file_handler.setLevel(logging.DEBUG)
        logger.addHandler(file_handler)

    return logger
