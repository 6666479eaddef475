"""OpenTelemetry tracer provider setup.

All trace and span IDs are generated by OTel. Spans are exported over OTLP
only when an endpoint is configured; otherwise the provider records spans
locally (so IDs are valid for log correlation) and drops them.
"""

import logging

from opentelemetry import trace
from opentelemetry.sdk.resources import SERVICE_NAME, Resource
from opentelemetry.sdk.trace import TracerProvider
from opentelemetry.sdk.trace.export import BatchSpanProcessor

logger = logging.getLogger(__name__)

_tracer: trace.Tracer | None = None
_provider: TracerProvider | None = None


def init_tracer(
    endpoint: str | None = None, service_name: str = "universal-graphs", insecure: bool = True
) -> trace.Tracer:
    """Initialize the module tracer. Call once at startup.

    Args:
        endpoint: OTel Collector endpoint (host:port), or None for no export
        service_name: Service name for traces
        insecure: Whether to use an insecure connection
    """
    global _tracer, _provider

    resource = Resource.create({SERVICE_NAME: service_name})
    _provider = TracerProvider(resource=resource)

    if endpoint:
        try:
            from opentelemetry.exporter.otlp.proto.grpc.trace_exporter import OTLPSpanExporter

            exporter = OTLPSpanExporter(endpoint=endpoint, insecure=insecure)
            _provider.add_span_processor(BatchSpanProcessor(exporter))
        except ImportError as e:
            logger.warning("OTel trace exporter not installed: %s", e)

    # Provider is held locally; the global OTel provider can only be set once per process.
    _tracer = _provider.get_tracer(service_name)
    return _tracer


def get_tracer() -> trace.Tracer:
    """Module tracer, or the global no-op tracer when not initialized."""
    global _tracer
    if _tracer is None:
        _tracer = trace.get_tracer("uninitialized")
    return _tracer


def shutdown_tracer() -> None:
    """Flush pending spans and drop the provider."""
    global _provider, _tracer
    if _provider is not None:
        try:
            _provider.force_flush()
            _provider.shutdown()
        except Exception:
            pass
    _provider = None
    _tracer = None


def format_trace_id(trace_id: int) -> str:
    """128-bit trace ID as a 32-char hex string."""
    return format(trace_id, "032x")


def format_span_id(span_id: int) -> str:
    """64-bit span ID as a 16-char hex string."""
    return format(span_id, "016x")
