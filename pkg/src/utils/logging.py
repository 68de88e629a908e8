"""Logging setup."""

import sys

from loguru import logger

from .config import settings


def configure_logging(level: str | None = None) -> None:
    """Send loguru output to stderr at the configured level."""
    logger.remove()
    logger.add(
        sys.stderr,
        level=(level or settings.log_level).upper(),
        colorize=settings.color,
        format="<level>{level: <8}</level> | {name}:{function} - {message}",
    )
