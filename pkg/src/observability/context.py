"""Observability context: an OTel span plus run metadata.

trace_id, span_id and parent_span_id come from the OTel span. session_id,
request_id and the component stack are ours and travel in a ContextVar, so
worker threads started with ``contextvars.copy_context()`` keep their parent.
"""

import contextvars
import uuid
from dataclasses import dataclass, field
from datetime import UTC, datetime
from typing import Any, Optional

from opentelemetry import trace

from .tracer import format_span_id, format_trace_id, get_tracer

_observability_context: contextvars.ContextVar[Optional["ObservabilityContext"]] = (
    contextvars.ContextVar("observability_context", default=None)
)


def _new_id(prefix: str) -> str:
    return f"{prefix}_{uuid.uuid4().hex[:12]}"


@dataclass
class ObservabilityContext:
    """Run metadata attached to an OTel span.

    Attributes:
        session_id: One CLI invocation
        request_id: One command within the session
        component_stack: Names of enclosing traced components
        start_time: Creation time
    """

    session_id: str | None = None
    request_id: str | None = None
    component_stack: list[str] = field(default_factory=list)
    start_time: datetime = field(default_factory=lambda: datetime.now(UTC))
    _span: Any | None = field(default=None, repr=False, compare=False)

    def _span_context(self) -> trace.SpanContext:
        return (self._span or trace.get_current_span()).get_span_context()

    @property
    def trace_id(self) -> str:
        ctx = self._span_context()
        return format_trace_id(ctx.trace_id) if ctx.is_valid else ""

    @property
    def span_id(self) -> str:
        ctx = self._span_context()
        return format_span_id(ctx.span_id) if ctx.is_valid else ""

    @property
    def parent_span_id(self) -> str | None:
        parent = getattr(self._span or trace.get_current_span(), "parent", None)
        if parent is not None and getattr(parent, "span_id", 0):
            return format_span_id(parent.span_id)
        return None

    @property
    def triggered_by(self) -> str:
        """Name of the enclosing component, or 'direct_call'."""
        return self.component_stack[-2] if len(self.component_stack) > 1 else "direct_call"

    @property
    def current_component(self) -> str:
        return self.component_stack[-1] if self.component_stack else "unknown"

    @classmethod
    def get_current(cls) -> Optional["ObservabilityContext"]:
        return _observability_context.get()

    def create_child(self, component_name: str, span: Any = None) -> "ObservabilityContext":
        """Child context: same session and request, one more stack entry."""
        return ObservabilityContext(
            session_id=self.session_id,
            request_id=self.request_id,
            component_stack=[*self.component_stack, component_name],
            _span=span or trace.get_current_span(),
        )

    def to_dict(self) -> dict:
        return {
            "trace_id": self.trace_id,
            "span_id": self.span_id,
            "parent_span_id": self.parent_span_id,
            "session_id": self.session_id,
            "request_id": self.request_id,
            "triggered_by": self.triggered_by,
            "component_stack": self.component_stack,
            "start_time": self.start_time.isoformat(),
        }


def get_or_create_context(component_name: str = "unknown") -> ObservabilityContext:
    """Current context, or a fresh root context named ``component_name``."""
    ctx = _observability_context.get()
    if ctx is None:
        ctx = ObservabilityContext(
            session_id=_new_id("sess"),
            request_id=_new_id("req"),
            component_stack=[component_name],
            _span=trace.get_current_span(),
        )
    return ctx


def set_context(ctx: ObservabilityContext) -> contextvars.Token:
    return _observability_context.set(ctx)


def reset_context(token: contextvars.Token) -> None:
    _observability_context.reset(token)


class ObservabilitySpan:
    """Context manager opening an OTel span with a child context.

    Used by main for the root ``run`` span of a CLI invocation::

        with ObservabilitySpan("run") as ctx:
            emit_info("run.started", ctx, {...})
    """

    def __init__(self, component_name: str):
        self.component_name = component_name
        self.token: contextvars.Token | None = None
        self.context: ObservabilityContext | None = None
        self._otel_span: Any = None
        self._otel_token: Any = None

    def __enter__(self) -> ObservabilityContext:
        self._otel_span = get_tracer().start_span(self.component_name)
        self._otel_token = trace.use_span(self._otel_span, end_on_exit=False)
        self._otel_token.__enter__()

        existing = _observability_context.get()
        if existing is None:
            self.context = ObservabilityContext(
                session_id=_new_id("sess"),
                request_id=_new_id("req"),
                component_stack=[self.component_name],
                _span=self._otel_span,
            )
        else:
            self.context = existing.create_child(self.component_name, self._otel_span)

        self.token = set_context(self.context)
        return self.context

    def __exit__(self, exc_type, exc_val, exc_tb):
        if self._otel_span is not None:
            if exc_type is not None:
                from opentelemetry.trace import Status, StatusCode

                self._otel_span.set_status(Status(StatusCode.ERROR, str(exc_val)))
                self._otel_span.record_exception(exc_val)
            self._otel_span.end()

        if self._otel_token is not None:
            self._otel_token.__exit__(exc_type, exc_val, exc_tb)

        if self.token is not None:
            reset_context(self.token)

        return False
