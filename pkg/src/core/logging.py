"""structlog configuration shared by the library and the CLI.

Events go to stderr so that result tables printed on stdout stay clean.
Every logger carries its component name under ``logger_name``; the
experiment engine binds ``iteration`` and ``seed`` through contextvars so
events from deep inside pool training or DSEL construction can be traced
back to the split that produced them.
"""

import logging
import os
import sys
from contextlib import AbstractContextManager
from functools import cache

import structlog

from src.config import PROJECT_ROOT, settings

RENDERERS = ("console", "json")


@cache
def _fallback_stream():
    try:
        log_dir = PROJECT_ROOT / "logs"
        log_dir.mkdir(exist_ok=True)
        return open(log_dir / "bbb.log", "a", encoding="utf-8")  # noqa: SIM115
    except OSError:
        return open(os.devnull, "w", encoding="utf-8")  # noqa: SIM115


def _log_stream():
    """The current stderr, else ``logs/bbb.log``, else devnull.

    Looked up per logger so a replaced or closed stderr is never cached.
    """
    try:
        sys.stderr.write("")
        sys.stderr.flush()
        return sys.stderr
    except (OSError, AttributeError, ValueError):
        return _fallback_stream()


def _stderr_logger(*args) -> structlog.PrintLogger:
    return structlog.PrintLogger(_log_stream())


def _renderer(fmt: str):
    if fmt not in RENDERERS:
        raise ValueError(f"LOG_FORMAT must be one of {', '.join(RENDERERS)}, got {fmt!r}")
    if fmt == "json":
        return structlog.processors.JSONRenderer()
    return structlog.dev.ConsoleRenderer(colors=False)


def setup_logging(level: str | None = None, fmt: str | None = None) -> None:
    """(Re)configure structlog; arguments override LOG_LEVEL / LOG_FORMAT."""
    level_name = (level or settings.log.level).upper()
    numeric = logging.getLevelName(level_name)
    if not isinstance(numeric, int):
        raise ValueError(f"unknown log level {level_name!r}")

    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            _renderer(fmt or settings.log.format),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(numeric),
        context_class=dict,
        logger_factory=_stderr_logger,
        cache_logger_on_first_use=False,
    )


setup_logging()


def get_logger(name: str) -> structlog.BoundLogger:
    return structlog.get_logger(logger_name=name)


def bound_context(**values) -> AbstractContextManager:
    """Attach ``values`` to every event logged inside the ``with`` block."""
    return structlog.contextvars.bound_contextvars(**values)
