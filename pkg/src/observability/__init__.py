"""Tracing and structured records for construction, sampling and analysis.

``@traced_operation`` wraps library operations (``sample``, ``census``,
``cylinder_mc``, ...) and ``@traced_command`` wraps CLI commands; each call
runs in an OTel span and emits ``.input``, ``.output`` or ``.error`` records
to the handler installed by :func:`initialize_observability`. Until then the
decorators call straight through.
"""

from .config import ObservabilityConfig, get_handler, initialize_observability, is_initialized, shutdown
from .context import (
    ObservabilityContext,
    ObservabilitySpan,
    get_or_create_context,
    reset_context,
    set_context,
)
from .decorators import traced_command, traced_operation
from .emitters import emit_error, emit_info, emit_log
from .handlers import (
    CompositeHandler,
    ConsoleHandler,
    JsonLinesHandler,
    LogHandler,
    NullHandler,
    OTelConfig,
    OTelGrpcHandler,
)
from .schema import LogRecord
from .serializers import extract_error_info, safe_serialize

__all__ = [
    "CompositeHandler",
    "ConsoleHandler",
    "JsonLinesHandler",
    "LogHandler",
    "LogRecord",
    "NullHandler",
    "OTelConfig",
    "OTelGrpcHandler",
    "ObservabilityConfig",
    "ObservabilityContext",
    "ObservabilitySpan",
    "emit_error",
    "emit_info",
    "emit_log",
    "extract_error_info",
    "get_handler",
    "get_or_create_context",
    "initialize_observability",
    "is_initialized",
    "reset_context",
    "safe_serialize",
    "set_context",
    "shutdown",
    "traced_command",
    "traced_operation",
]
