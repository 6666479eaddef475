"""Tests for record handlers and emission."""

import io
import json
from datetime import UTC, datetime

import pytest

from src.observability import (
    ObservabilityConfig,
    ObservabilityContext,
    emit_info,
    initialize_observability,
    shutdown,
)
from src.observability.handlers import (
    CompositeHandler,
    ConsoleHandler,
    JsonLinesHandler,
    LogHandler,
    OTelGrpcHandler,
)
from src.observability.schema import LogRecord


def make_record(**overrides) -> LogRecord:
    fields = {
        "timestamp": datetime(2025, 3, 1, 12, 4, 31, 207000, tzinfo=UTC),
        "trace_id": "0" * 31 + "1",
        "span_id": "00000000a41c09e2",
        "parent_span_id": None,
        "session_id": "sess_1",
        "request_id": "req_1",
        "level": "DEBUG",
        "event": "operation.output",
        "component_type": "operation",
        "component_name": "sample",
        "triggered_by": "gen",
        "data": {"operation_name": "sample", "output": {"n": 10, "edges": 4}},
        "metrics": {"duration_ms": 38.2},
    }
    fields.update(overrides)
    return LogRecord(**fields)


class FailingHandler(LogHandler):
    def write_log(self, record) -> None:
        raise OSError("disk full")


class ListHandler(LogHandler):
    def __init__(self):
        self.records = []

    def write_log(self, record) -> None:
        self.records.append(record)


class TestLogRecord:
    """Tests for LogRecord.to_dict."""

    def test_timestamp_is_iso(self):
        """Test the timestamp is written in ISO format."""
        data = make_record().to_dict()
        assert data["timestamp"] == "2025-03-01T12:04:31.207000+00:00"
        assert data["data"]["output"] == {"n": 10, "edges": 4}
        assert data["tags"] == []


class TestJsonLinesHandler:
    """Tests for the JSON lines file handler."""

    def test_appends_one_line_per_record(self, tmp_path):
        """Test each record becomes one JSON object."""
        path = tmp_path / "run.jsonl"
        handler = JsonLinesHandler(path)
        handler.write_log(make_record())
        handler.write_log(make_record(event="operation.error", level="ERROR"))
        handler.close()
        lines = path.read_text(encoding="utf-8").splitlines()
        assert [json.loads(line)["event"] for line in lines] == ["operation.output", "operation.error"]

    def test_write_after_close_is_ignored(self, tmp_path):
        """Test a closed handler drops records."""
        handler = JsonLinesHandler(tmp_path / "run.jsonl")
        handler.close()
        handler.write_log(make_record())
        handler.close()
        assert (tmp_path / "run.jsonl").read_text(encoding="utf-8") == ""


class TestConsoleHandler:
    """Tests for the stderr console handler."""

    def test_line_format(self):
        """Test time, level, span suffix, event, component and duration."""
        stream = io.StringIO()
        ConsoleHandler(stream=stream).write_log(make_record())
        line = stream.getvalue()
        assert line.startswith("12:04:31.207 DEBUG    [a41c09e2] operation.output")
        assert line.rstrip().endswith("- sample (38ms)")

    def test_error_detail(self):
        """Test error records carry the error type and message."""
        record = make_record(
            level="ERROR",
            event="operation.error",
            data={"error_type": "StepLimitError", "error_message": "needs 200 steps"},
            metrics={},
        )
        text = ConsoleHandler(stream=io.StringIO()).format(record)
        assert text.splitlines()[1] == "  StepLimitError: needs 200 steps"

    def test_no_color_when_not_a_tty(self):
        """Test StringIO streams get plain text."""
        assert not ConsoleHandler(stream=io.StringIO(), color=True).color


class TestCompositeHandler:
    """Tests for fan-out."""

    def test_failure_does_not_stop_others(self):
        """Test a failing handler is skipped."""
        sink = ListHandler()
        CompositeHandler([FailingHandler(), sink]).write_log(make_record())
        assert len(sink.records) == 1


class TestOTelAttributes:
    """Tests for OTLP attribute flattening."""

    def test_scalars_and_nested_data(self):
        """Test scalar data is kept and nested data is JSON-encoded."""
        attributes = OTelGrpcHandler.attributes(make_record())
        assert attributes["data.operation_name"] == "sample"
        assert json.loads(attributes["data.output"]) == {"n": 10, "edges": 4}
        assert attributes["metrics.duration_ms"] == 38.2
        assert attributes["session_id"] == "sess_1"


class TestEmission:
    """Tests for emit_* with an installed handler."""

    @pytest.fixture
    def sink(self):
        handler = ListHandler()
        initialize_observability(handler=handler, config=ObservabilityConfig())
        yield handler
        shutdown()

    def test_emit_info(self, sink):
        """Test run events name the innermost component."""
        ctx = ObservabilityContext(session_id="sess_x", component_stack=["run"])
        emit_info("run.completed", ctx, {"command": "gen", "exit_code": 0})
        (record,) = sink.records
        assert record.level == "INFO"
        assert record.component_type == "run"
        assert record.component_name == "run"
        assert record.data == {"command": "gen", "exit_code": 0}

    def test_handler_errors_are_swallowed(self):
        """Test a failing handler never raises into the caller."""
        initialize_observability(handler=FailingHandler(), config=ObservabilityConfig())
        try:
            emit_info("run.started", ObservabilityContext(component_stack=["run"]), {})
        finally:
            shutdown()

