"""Structured log records emitted around operations, commands and runs.

Level is metadata on the record; nothing is filtered by it.
"""

from dataclasses import asdict, dataclass, field
from datetime import datetime
from typing import Any


class F:
    """Top-level record keys as written by the handlers."""

    TIMESTAMP = "timestamp"
    TRIGGERED_BY = "triggered_by"


class M:
    """Keys under ``metrics``."""

    DURATION_MS = "duration_ms"


class D:
    """Keys under ``data``.

    ``operation.*`` and ``command.*`` records carry ``<type>_name`` plus
    ``input`` ({args, kwargs}) on ``.input``, ``output`` (the result's
    summary() when it has one) on ``.output``, and ``error_type``,
    ``error_message``, ``stack_trace`` on ``.error``. ``run.*`` records from
    the entry point carry the command, its params and the exit code.
    """

    INPUT = "input"
    OUTPUT = "output"
    DURATION_MS = "duration_ms"


@dataclass
class LogRecord:
    """One emitted event, stamped with the ids of the active span."""

    timestamp: datetime
    trace_id: str
    span_id: str
    parent_span_id: str | None
    session_id: str | None
    request_id: str | None
    level: str
    event: str
    component_type: str
    component_name: str
    triggered_by: str
    data: dict[str, Any] = field(default_factory=dict)
    metrics: dict[str, Any] = field(default_factory=dict)
    tags: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        record = asdict(self)
        record[F.TIMESTAMP] = self.timestamp.isoformat()
        return record
