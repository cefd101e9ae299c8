"""Structured logging for the refgroup packages, built on structlog.

Events go to stderr so that machine reports on stdout stay clean. Each
logger carries the dotted name of the module it was made for, which is how
a long claim run is filtered down to one subsystem.
"""

from __future__ import annotations

import logging
import os
import sys
from dataclasses import dataclass

import structlog

LOG_LEVEL_ENV = "REFGROUP_LOG_LEVEL"
LOG_FORMAT_ENV = "REFGROUP_LOG_FORMAT"


@dataclass(slots=True, frozen=True, kw_only=True)
class LogSettings:
    """Minimum level and renderer."""

    level: int = logging.INFO

    """One JSON object per event instead of the console renderer"""
    json: bool = False

    @classmethod
    def from_env(cls) -> LogSettings:
        """Reads REFGROUP_LOG_LEVEL and REFGROUP_LOG_FORMAT.

        Unknown level names fall back to INFO; any format other than
        ``json`` selects the console renderer.
        """
        name = os.environ.get(LOG_LEVEL_ENV, "info").upper()
        level = logging.getLevelNamesMapping().get(name, logging.INFO)
        return cls(level=level, json=os.environ.get(LOG_FORMAT_ENV) == "json")


def setup_logging(settings: LogSettings | None = None) -> None:
    """Configures structlog, from the environment unless ``settings`` is given."""
    settings = LogSettings.from_env() if settings is None else settings
    renderer: structlog.types.Processor = (
        structlog.processors.JSONRenderer(sort_keys=True)
        if settings.json
        else structlog.dev.ConsoleRenderer()
    )
    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.stdlib.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.UnicodeDecoder(),
            renderer,
        ],
        wrapper_class=structlog.make_filtering_bound_logger(settings.level),
        context_class=dict,
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=True,
    )


_configured = False


def get_logger(name: str | None = None) -> structlog.stdlib.BoundLogger:
    """A logger bound to ``module=name``, configuring structlog on first call."""
    global _configured  # noqa: PLW0603
    if not _configured:
        setup_logging()
        _configured = True
    logger = structlog.get_logger()
    return logger if name is None else logger.bind(module=name)
