"""
Structured logging for codebounds.

structlog is configured once on import. Results go to stdout, so every
log line is written to stderr. TraceContext wraps long operations (sweeps,
reference diffs) and binds its trace id into the context of every log
line emitted inside it.
"""

from __future__ import annotations

import logging
import sys
import time
from dataclasses import dataclass, field
from typing import Any
from uuid import uuid4

import structlog

from codebounds.config import Settings, get_settings


def _renderer(settings: Settings) -> structlog.typing.Processor:
    if settings.is_development:
        return structlog.dev.ConsoleRenderer()
    return structlog.processors.JSONRenderer()


def configure_logging(settings: Settings | None = None) -> None:
    """Configure structlog from settings; unknown levels fall back to INFO."""
    settings = settings or get_settings()
    level = logging.getLevelName(settings.log_level.upper())
    if not isinstance(level, int):
        level = logging.INFO

    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.StackInfoRenderer(),
            structlog.dev.set_exc_info,
            structlog.processors.TimeStamper(fmt="iso"),
            _renderer(settings),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(level),
        context_class=dict,
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=True,
    )


def get_logger(name: str) -> structlog.BoundLogger:
    """Get a logger instance with the given name."""
    return structlog.get_logger(name)


@dataclass(frozen=True)
class TraceEvent:
    """One recorded step of a trace."""

    kind: str
    elapsed_ms: float
    data: dict[str, Any] = field(default_factory=dict)


class TraceContext:
    """
    Context manager for tracing a sweep or a reference diff.

    Logs trace_start / trace_end with the duration, keeps the recorded
    events in order and binds trace_id and operation for nested loggers.
    """

    def __init__(self, operation: str, run_id: str | None = None):
        self.operation = operation
        self.trace_id = uuid4().hex[:8]
        self.run_id = run_id or uuid4().hex[:8]
        self.events: list[TraceEvent] = []
        self.logger = get_logger("trace")
        self._started = time.perf_counter()

    @property
    def elapsed_ms(self) -> float:
        return round((time.perf_counter() - self._started) * 1000, 2)

    def __enter__(self) -> TraceContext:
        self._started = time.perf_counter()
        structlog.contextvars.bind_contextvars(trace_id=self.trace_id, operation=self.operation)
        self.logger.info("trace_start", run_id=self.run_id)
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        self.logger.info(
            "trace_end",
            run_id=self.run_id,
            duration_ms=self.elapsed_ms,
            event_count=len(self.events),
            error=str(exc_val) if exc_val else None,
        )
        structlog.contextvars.unbind_contextvars("trace_id", "operation")

    def log_event(self, kind: str, data: dict[str, Any] | None = None) -> TraceEvent:
        """Record an event and log it at debug level."""
        event = TraceEvent(kind=kind, elapsed_ms=self.elapsed_ms, data=data or {})
        self.events.append(event)
        self.logger.debug(f"trace_event_{kind}", elapsed_ms=event.elapsed_ms, **event.data)
        return event

    def log_progress(self, completed: int, total: int, every: int = 50) -> None:
        """Log chunk progress at info level every `every` chunks and at the end."""
        if completed == total or completed % every == 0:
            self.logger.info("trace_progress", completed=completed, total=total)

    def log_mismatch(self, label: str, column: str, expected: int, computed: int) -> None:
        """Record a computed value that disagrees with a reference value."""
        self.log_event(
            "mismatch",
            data={"label": label, "column": column, "expected": expected, "computed": computed},
        )
        self.logger.warning(
            "reference_mismatch",
            label=label,
            column=column,
            expected=expected,
            computed=computed,
        )


# Configure logging on module import
configure_logging()
