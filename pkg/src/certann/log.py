"""Logging helper module."""

import os
from logging import (
    DEBUG,
    WARNING,
    Logger,
    basicConfig,
    getLevelName,
    getLogger,
)

from rich.console import Console
from rich.logging import RichHandler

LOG_ENV_VAR = "CERTANN_LOG"


def _level_from_env() -> int:
    raw = os.environ.get(LOG_ENV_VAR, "").strip().upper()
    if not raw:
        return WARNING
    if raw.isdigit():
        return int(raw)
    level = getLevelName(raw)
    # getLevelName returns "Level X" for unknown names
    return level if isinstance(level, int) else WARNING


def init_logging(*, verbose: bool = False) -> None:
    """Initialize logging for the application.

    Should be called once when the application starts. The level is taken from
    the CERTANN_LOG environment variable unless verbose forces DEBUG.
    """
    level = DEBUG if verbose else _level_from_env()
    basicConfig(
        level=level,
        format="%(name)s: %(message)s",
        handlers=[
            RichHandler(
                console=Console(stderr=True),
                show_path=False,
                rich_tracebacks=True,
            ),
        ],
        force=True,
    )
    configure_3p_loggers(getLogger())
    if level <= DEBUG:
        getLogger(__name__).debug("Debug logging enabled.")


def get_logger(name: str) -> Logger:
    """Proxy for logging.getLogger."""
    return getLogger(name)


def configure_3p_loggers(root_logger: Logger) -> None:
    """Keep third-party loggers quiet unless they are ours."""
    for name in root_logger.manager.loggerDict:
        if name.startswith("certann"):
            continue
        getLogger(name).setLevel(max(WARNING, root_logger.level))
