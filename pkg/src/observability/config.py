"""Observability settings and process-wide state.

Nothing is emitted until :func:`initialize_observability` has installed a
handler; level is recorded on each record and never used to filter.
"""

import contextlib
import os
from dataclasses import dataclass

from .handlers import LogHandler
from .tracer import init_tracer, shutdown_tracer


def _flag(name: str, default: str) -> bool:
    return os.environ.get(name, default).lower() == "true"


@dataclass
class ObservabilityConfig:
    """Settings read from the environment.

    Attributes:
        service_name: ``SERVICE_NAME``, attached to spans and records
        otel_endpoint: ``OTEL_ENDPOINT`` (host:port); nothing is exported when unset
        otel_insecure: ``OTEL_INSECURE``
        console_enabled: ``LOG_CONSOLE``, mirror records on stderr
        console_color: ``LOG_COLOR``
    """

    service_name: str = "universal-graphs"
    otel_endpoint: str | None = None
    otel_insecure: bool = True
    console_enabled: bool = False
    console_color: bool = True

    @classmethod
    def from_env(cls) -> "ObservabilityConfig":
        return cls(
            service_name=os.environ.get("SERVICE_NAME", "universal-graphs"),
            otel_endpoint=os.environ.get("OTEL_ENDPOINT") or None,
            otel_insecure=_flag("OTEL_INSECURE", "true"),
            console_enabled=_flag("LOG_CONSOLE", "false"),
            console_color=_flag("LOG_COLOR", "true"),
        )


_handler: LogHandler | None = None


def initialize_observability(handler: LogHandler, config: ObservabilityConfig | None = None) -> None:
    """Start the tracer and install ``handler`` as the record sink."""
    global _handler
    config = config or ObservabilityConfig.from_env()
    init_tracer(endpoint=config.otel_endpoint, service_name=config.service_name, insecure=config.otel_insecure)
    _handler = handler


def get_handler() -> LogHandler | None:
    return _handler


def is_initialized() -> bool:
    return _handler is not None


def shutdown() -> None:
    """Flush spans and records, then return to the uninitialized state."""
    global _handler
    shutdown_tracer()
    if _handler is not None:
        with contextlib.suppress(Exception):
            _handler.flush()
            _handler.close()
    _handler = None
