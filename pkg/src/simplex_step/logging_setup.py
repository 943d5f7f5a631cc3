"""loguru sink configuration for the command-line entry point."""

import sys

from loguru import logger

from .config import Config


def configure_logging(level: str | None = None) -> None:
    """
    Route all log output to stderr at the requested level.

    stdout is reserved for command output, so the default loguru sink is
    replaced rather than added to.

    Args:
        level: loguru level name; defaults to Config.LOG_LEVEL
    """
    logger.remove()
    logger.add(
        sys.stderr,
        level=(level or Config.LOG_LEVEL).upper(),
        format="<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | {name}:{function} - {message}",
    )
