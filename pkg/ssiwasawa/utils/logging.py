"""
Logging for ssiwasawa.

Log records go to a rich handler; an extra VERBOSE level (15) carries
per-check progress and certified precisions.
"""

import logging
from typing import Any, Dict, Optional, Union

from rich.console import Console
from rich.logging import RichHandler

from ssiwasawa.settings.config import LogLevel

VERBOSE = 15

LOG_LEVEL_MAP: Dict[LogLevel, int] = {
    LogLevel.DEBUG: logging.DEBUG,
    LogLevel.VERBOSE: VERBOSE,
    LogLevel.INFO: logging.INFO,
    LogLevel.WARNING: logging.WARNING,
    LogLevel.ERROR: logging.ERROR,
}

logging.addLevelName(VERBOSE, "VERBOSE")


def verbose(self: logging.Logger, message: str, *args: Any, **kwargs: Any) -> None:
    """Log ``message`` at VERBOSE level."""
    if self.isEnabledFor(VERBOSE):
        self._log(VERBOSE, message, args, **kwargs)


logging.Logger.verbose = verbose  # type: ignore


def _coerce_level(log_level: Union[LogLevel, str]) -> int:
    """Numeric level for a LogLevel or its name; unknown names fall back to INFO."""
    if isinstance(log_level, str) and not isinstance(log_level, LogLevel):
        try:
            log_level = LogLevel(log_level.lower())
        except ValueError:
            return logging.INFO
    return LOG_LEVEL_MAP.get(log_level, logging.INFO)


def _stderr_handler(show_path: bool, rich_tracebacks: bool) -> RichHandler:
    # stdout belongs to reports, CSV tables and JSON payloads; logs never touch it
    console = Console(stderr=True)
    handler = RichHandler(
        console=console,
        show_path=show_path,
        rich_tracebacks=rich_tracebacks,
        markup=False,
        show_time=True,
    )
    handler.setFormatter(logging.Formatter("%(message)s"))
    return handler


def configure_logging(
    log_level: Union[LogLevel, str] = LogLevel.INFO,
    show_path: bool = False,
    rich_tracebacks: bool = True,
) -> None:
    """
    Install a single stderr handler on the root logger.

    Calling it again replaces the previous handler, so the CLI can
    reconfigure after reading settings.

    Args:
        log_level: Minimum level to display.
        show_path: Show the emitting file in each record.
        rich_tracebacks: Format tracebacks with rich.
    """
    root = logging.getLogger()
    root.setLevel(_coerce_level(log_level))
    for existing in list(root.handlers):
        root.removeHandler(existing)
    root.addHandler(_stderr_handler(show_path, rich_tracebacks))


def get_logger(name: str, log_level: Optional[Union[LogLevel, str]] = None) -> logging.Logger:
    """Logger ``name`` (conventionally ``ssiwasawa.<area>``), optionally pinned to a level."""
    logger = logging.getLogger(name)
    if log_level is not None:
        logger.setLevel(_coerce_level(log_level))
    return logger
