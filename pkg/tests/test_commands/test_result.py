"""Tests for CommandResult dataclass."""

from src.commands.result import EXIT_DIFFERENT, EXIT_ERROR, EXIT_OK, CommandResult


class TestCommandResultOk:
    """Tests for CommandResult.ok() factory method."""

    def test_ok_basic(self):
        """Test creating successful result."""
        result = CommandResult.ok({"edges": 6}, output="4 6\n")
        assert result.success is True
        assert result.data == {"edges": 6}
        assert result.exit_code == EXIT_OK
        assert result.error is None

    def test_ok_with_exit_code(self):
        """Test a successful run may still report a verdict through its exit code."""
        result = CommandResult.ok({"verdict": "different"}, exit_code=EXIT_DIFFERENT)
        assert result
        assert result.exit_code == EXIT_DIFFERENT

    def test_ok_default_empty_metadata(self):
        """Test metadata defaults to empty dict."""
        assert CommandResult.ok(None).metadata == {}


class TestCommandResultFail:
    """Tests for CommandResult.fail() factory method."""

    def test_fail_basic(self):
        """Test creating failure result."""
        result = CommandResult.fail("step file unreadable")
        assert not result
        assert result.error_type == "unknown"
        assert result.exit_code == EXIT_ERROR

    def test_fail_keeps_report(self):
        """Test a failed check keeps its data and rendered output."""
        result = CommandResult.fail("hard checks failed", "check_failed", EXIT_DIFFERENT, data={"a": 1}, output="x\n")
        assert result.data == {"a": 1}
        assert result.output == "x\n"


class TestCommandResultToDict:
    """Tests for CommandResult.to_dict() method."""

    def test_to_dict_success(self):
        """Test converting successful result to dict."""
        d = CommandResult.ok([1, 2], metadata={"duration_ms": 3}).to_dict()
        assert d == {"success": True, "exit_code": 0, "result": [1, 2], "duration_ms": 3}

    def test_to_dict_failure(self):
        """Test converting failed result to dict."""
        d = CommandResult.fail("bad seed", "ValueError").to_dict()
        assert d["error"] == "bad seed"
        assert d["error_type"] == "ValueError"
        assert "result" not in d
