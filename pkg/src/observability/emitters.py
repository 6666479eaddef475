"""Record emission.

Once observability is initialized every call produces a record for the
injected LogHandler. Handler failures never reach the caller.
"""

import contextlib
from datetime import UTC, datetime
from typing import Any

from .config import get_handler, is_initialized
from .context import ObservabilityContext
from .schema import D, F, LogRecord, M
from .serializers import extract_error_info, safe_serialize


def emit_log(
    level: str,
    event: str,
    ctx: ObservabilityContext,
    data: dict[str, Any],
    metrics: dict[str, Any] | None = None,
) -> None:
    """Emit one record.

    The component type is the event prefix (``operation`` in
    ``operation.output``); the name comes from ``data["<type>_name"]`` or
    the innermost component on the context.
    """
    if not is_initialized():
        return

    component_type = event.split(".", 1)[0]
    record = LogRecord(
        timestamp=datetime.now(UTC),
        trace_id=ctx.trace_id,
        span_id=ctx.span_id,
        parent_span_id=ctx.parent_span_id,
        session_id=ctx.session_id,
        request_id=ctx.request_id,
        level=level,
        event=event,
        component_type=component_type,
        component_name=data.get(f"{component_type}_name") or ctx.current_component,
        triggered_by=ctx.triggered_by,
        data=safe_serialize(data),
        metrics=metrics or {},
    )

    handler = get_handler()
    if handler is not None:
        with contextlib.suppress(Exception):
            handler.write_log(record)


def emit_info(event: str, ctx: ObservabilityContext, data: dict[str, Any]) -> None:
    emit_log("INFO", event, ctx, data)


def emit_error(event: str, ctx: ObservabilityContext, data: dict[str, Any]) -> None:
    emit_log("ERROR", event, ctx, data)


def emit_component_start(
    component_type: str, component_name: str, ctx: ObservabilityContext, input_data: dict[str, Any]
) -> None:
    emit_log(
        "DEBUG",
        f"{component_type}.input",
        ctx,
        {
            f"{component_type}_name": component_name,
            F.TRIGGERED_BY: ctx.triggered_by,
            D.INPUT: input_data,
        },
    )


def emit_component_end(
    component_type: str,
    component_name: str,
    ctx: ObservabilityContext,
    output_data: Any,
    duration_ms: float,
) -> None:
    emit_log(
        "DEBUG",
        f"{component_type}.output",
        ctx,
        {f"{component_type}_name": component_name, D.OUTPUT: output_data, D.DURATION_MS: duration_ms},
        metrics={M.DURATION_MS: duration_ms},
    )


def emit_component_error(
    component_type: str,
    component_name: str,
    ctx: ObservabilityContext,
    exception: Exception,
    input_data: dict[str, Any],
    duration_ms: float,
) -> None:
    emit_log(
        "ERROR",
        f"{component_type}.error",
        ctx,
        {
            f"{component_type}_name": component_name,
            F.TRIGGERED_BY: ctx.triggered_by,
            **extract_error_info(exception),
            D.INPUT: input_data,
            D.DURATION_MS: duration_ms,
        },
        metrics={M.DURATION_MS: duration_ms},
    )
