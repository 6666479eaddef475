"""Decorator-based instrumentation using native OTel spans.

Usage:
    @traced_operation("line_extend")
    def extend_to_bound(self, bound): ...

    class GenCommand(BaseCommand):
        @traced_command()
        def execute(self, params): ...

Decorated callables are synchronous. When observability is not initialized
the wrapper calls straight through, so library use pays nothing. Per-pair hot
paths (adjacency, membership) are never decorated.
"""

import inspect
import time
from collections.abc import Callable
from functools import wraps
from typing import Any, TypeVar

from opentelemetry.trace import SpanKind, Status, StatusCode

from .config import is_initialized
from .context import get_or_create_context, reset_context, set_context
from .emitters import emit_component_end, emit_component_error, emit_component_start
from .serializers import safe_serialize
from .tracer import get_tracer

F = TypeVar("F", bound=Callable[..., Any])


def _get_effective_name(provided_name: str | None, args: tuple, func: Callable) -> str:
    """Explicit name, then ``self.name`` for methods, then the function name."""
    if provided_name:
        return provided_name
    if args and isinstance(getattr(args[0], "name", None), str):
        return args[0].name
    return func.__name__


def _prepare_input_data(args: tuple, kwargs: dict, func: Callable) -> dict:
    """Named arguments (minus self/cls) serialized for the input record."""
    try:
        params = list(inspect.signature(func).parameters)
        if params and params[0] in ("self", "cls") and args:
            args, params = args[1:], params[1:]
        named = {params[i] if i < len(params) else f"arg_{i}": arg for i, arg in enumerate(args)}
        return {"args": safe_serialize(named), "kwargs": safe_serialize(kwargs)}
    except (TypeError, ValueError):
        return {"args": safe_serialize(args[1:]), "kwargs": safe_serialize(kwargs)}


def _execute_with_tracing(
    func: Callable, name: str, component_type: str, args: tuple, kwargs: dict
) -> Any:
    tracer = get_tracer()
    parent_ctx = get_or_create_context(name)
    input_data = _prepare_input_data(args, kwargs, func)

    with tracer.start_as_current_span(
        name=f"{component_type}.{name}", kind=SpanKind.INTERNAL
    ) as span:
        span.set_attribute("component.type", component_type)
        span.set_attribute("component.name", name)
        span.set_attribute("session.id", parent_ctx.session_id or "")
        span.set_attribute("request.id", parent_ctx.request_id or "")

        ctx = parent_ctx.create_child(name, span)
        token = set_context(ctx)
        emit_component_start(component_type, name, ctx, input_data)
        start_time = time.perf_counter()

        try:
            result = func(*args, **kwargs)
            duration_ms = (time.perf_counter() - start_time) * 1000
            span.set_status(Status(StatusCode.OK))
            span.set_attribute("duration_ms", duration_ms)
            emit_component_end(component_type, name, ctx, safe_serialize(result), duration_ms)
            return result
        except Exception as e:
            duration_ms = (time.perf_counter() - start_time) * 1000
            span.set_status(Status(StatusCode.ERROR, str(e)))
            span.record_exception(e)
            span.set_attribute("duration_ms", duration_ms)
            emit_component_error(component_type, name, ctx, e, input_data, duration_ms)
            raise
        finally:
            reset_context(token)


def _traced(component_type: str, name: str | None) -> Callable[[F], F]:
    def decorator(func: F) -> F:
        @wraps(func)
        def wrapper(*args, **kwargs):
            if not is_initialized():
                return func(*args, **kwargs)
            effective_name = _get_effective_name(name, args, func)
            return _execute_with_tracing(func, effective_name, component_type, args, kwargs)

        return wrapper  # type: ignore[return-value]

    return decorator


def traced_operation(name: str | None = None) -> Callable[[F], F]:
    """Span plus input/output/error records around a library operation.

    Args:
        name: Operation name, e.g. "line_extend". Defaults to the function name.
    """
    return _traced("operation", name)


def traced_command(name: str | None = None) -> Callable[[F], F]:
    """Span plus records around a CLI command; the name defaults to ``self.name``."""
    return _traced("command", name)
