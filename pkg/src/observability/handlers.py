"""Record sinks.

Spans are exported by the tracer; handlers only ship log records. The entry
point picks the handlers from the environment and injects them through
``initialize_observability``:

- ``OTEL_ENDPOINT`` set: :class:`OTelGrpcHandler`
- ``LOG_FILE`` set: :class:`JsonLinesHandler`
- ``LOG_CONSOLE=true``: :class:`ConsoleHandler` on stderr

stdout carries command output only, so no handler ever writes there.
"""

import contextlib
import json
import logging
import sys
import threading
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass
from pathlib import Path
from typing import Any, ClassVar, TextIO

from .schema import LogRecord

logger = logging.getLogger(__name__)


class LogHandler(ABC):
    """A destination for log records."""

    @abstractmethod
    def write_log(self, record: LogRecord) -> None:
        pass

    def flush(self) -> None:  # noqa: B027
        pass

    def close(self) -> None:  # noqa: B027
        pass


class NullHandler(LogHandler):
    """Discards everything. Used when no sink is configured."""

    def write_log(self, record: LogRecord) -> None:
        pass


class JsonLinesHandler(LogHandler):
    """Appends one JSON object per record to a file."""

    def __init__(self, path: Path | str):
        self.path = Path(path)
        self._lock = threading.Lock()
        self._stream: TextIO | None = self.path.open("a", encoding="utf-8")

    def write_log(self, record: LogRecord) -> None:
        line = json.dumps(record.to_dict(), default=str)
        with self._lock:
            if self._stream is not None:
                self._stream.write(line + "\n")

    def flush(self) -> None:
        with self._lock:
            if self._stream is not None:
                self._stream.flush()

    def close(self) -> None:
        with self._lock:
            if self._stream is not None:
                self._stream.close()
                self._stream = None


class ConsoleHandler(LogHandler):
    """One line per record on stderr, e.g.::

        12:04:31.207 DEBUG    [a41c09e2] operation.output  - sample (38ms)
    """

    LEVEL_COLORS: ClassVar[dict[str, str]] = {
        "DEBUG": "\033[36m",
        "INFO": "\033[32m",
        "WARNING": "\033[33m",
        "ERROR": "\033[31m",
    }
    RESET: ClassVar[str] = "\033[0m"

    def __init__(self, stream: TextIO | None = None, color: bool = True):
        self.stream = stream or sys.stderr
        self.color = color and hasattr(self.stream, "isatty") and self.stream.isatty()
        self._lock = threading.Lock()

    def format(self, record: LogRecord) -> str:
        level = f"{record.level:8}"
        if self.color:
            level = f"{self.LEVEL_COLORS.get(record.level, '')}{level}{self.RESET}"
        span = record.span_id[-8:] if record.span_id else "--------"
        line = (
            f"{record.timestamp.strftime('%H:%M:%S.%f')[:-3]} {level} [{span}] "
            f"{record.event:17} - {record.component_name}"
        )
        duration = record.metrics.get("duration_ms")
        if duration:
            line += f" ({duration:.0f}ms)"
        if record.level == "ERROR" and record.data.get("error_message"):
            line += f"\n  {record.data.get('error_type', 'error')}: {record.data['error_message'][:200]}"
        return line

    def write_log(self, record: LogRecord) -> None:
        with self._lock, contextlib.suppress(Exception):
            self.stream.write(self.format(record) + "\n")

    def flush(self) -> None:
        with self._lock, contextlib.suppress(Exception):
            self.stream.flush()


@dataclass
class OTelConfig:
    endpoint: str = "localhost:4317"
    insecure: bool = True
    service_name: str = "universal-graphs"


_SEVERITY = {"DEBUG": "DEBUG", "INFO": "INFO", "WARNING": "WARN", "ERROR": "ERROR"}


class OTelGrpcHandler(LogHandler):
    """Ships records to an OpenTelemetry Collector as OTLP log records.

    Scalar ``data`` values become ``data.<key>`` attributes; anything else is
    JSON-encoded. Numeric metrics become ``metrics.<key>``.
    """

    def __init__(self, config: OTelConfig):
        self.config = config
        self._provider: Any = None
        try:
            from opentelemetry.exporter.otlp.proto.grpc._log_exporter import OTLPLogExporter
            from opentelemetry.sdk._logs import LoggerProvider
            from opentelemetry.sdk._logs.export import BatchLogRecordProcessor
            from opentelemetry.sdk.resources import SERVICE_NAME, Resource
        except ImportError as e:
            logger.warning("OTel log exporter not installed: %s", e)
            return
        self._provider = LoggerProvider(resource=Resource.create({SERVICE_NAME: config.service_name}))
        self._provider.add_log_record_processor(
            BatchLogRecordProcessor(OTLPLogExporter(endpoint=config.endpoint, insecure=config.insecure))
        )

    @staticmethod
    def attributes(record: LogRecord) -> dict[str, str | int | float | bool]:
        attributes: dict[str, str | int | float | bool] = {
            "event": record.event,
            "component_type": record.component_type,
            "component_name": record.component_name,
            "trace_id": record.trace_id,
            "span_id": record.span_id,
            "session_id": record.session_id or "",
            "request_id": record.request_id or "",
            "triggered_by": record.triggered_by,
        }
        for key, value in record.data.items():
            if isinstance(value, (str, int, float, bool)):
                attributes[f"data.{key}"] = value
            elif value is not None:
                attributes[f"data.{key}"] = json.dumps(value, default=str)
        for key, value in record.metrics.items():
            if isinstance(value, (int, float)):
                attributes[f"metrics.{key}"] = value
        return attributes

    def write_log(self, record: LogRecord) -> None:
        if self._provider is None:
            return
        from opentelemetry._logs import SeverityNumber

        severity = _SEVERITY.get(record.level, "INFO")
        with contextlib.suppress(Exception):
            self._provider.get_logger(self.config.service_name).emit(
                timestamp=int(record.timestamp.timestamp() * 1e9),
                observed_timestamp=time.time_ns(),
                severity_number=getattr(SeverityNumber, severity),
                severity_text=severity,
                body=f"{record.event} - {record.component_name}",
                attributes=self.attributes(record),
            )

    def flush(self) -> None:
        if self._provider is not None:
            with contextlib.suppress(Exception):
                self._provider.force_flush()

    def close(self) -> None:
        if self._provider is not None:
            with contextlib.suppress(Exception):
                self._provider.shutdown()
            self._provider = None


class CompositeHandler(LogHandler):
    """Fans out to several handlers; a failing one does not stop the rest."""

    def __init__(self, handlers: list[LogHandler]):
        self.handlers = handlers

    def write_log(self, record: LogRecord) -> None:
        for handler in self.handlers:
            with contextlib.suppress(Exception):
                handler.write_log(record)

    def flush(self) -> None:
        for handler in self.handlers:
            with contextlib.suppress(Exception):
                handler.flush()

    def close(self) -> None:
        for handler in self.handlers:
            with contextlib.suppress(Exception):
                handler.close()
