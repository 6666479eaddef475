"""Tests for custom exception hierarchy."""

import pytest

from src.core.exceptions import (
    AdmissibleTupleExhaustedError,
    ComplexityError,
    ConfigError,
    ConstructionError,
    EmptySetError,
    GraphError,
    IncompatibleMeasureError,
    InfeasibleCoverError,
    IntervalParseError,
    LoopError,
    PreconditionError,
    StepLimitError,
    UnsupportedVariantError,
    ValidationError,
)


class TestGraphError:
    """Tests for base GraphError."""

    def test_basic_creation(self):
        """Test creating basic error."""
        error = GraphError("Something went wrong")
        assert str(error) == "Something went wrong"
        assert error.message == "Something went wrong"
        assert error.details == {}

    def test_with_details(self):
        """Test creating error with details."""
        assert GraphError("Error", details={"step": 3}).details == {"step": 3}

    @pytest.mark.parametrize(
        "error",
        [
            EmptySetError("min"),
            IntervalParseError("[1,", "missing bracket"),
            InfeasibleCoverError("points too close"),
            StepLimitError(200, 100),
            ConstructionError("no slot"),
            LoopError(1),
            PreconditionError("adjacent whites"),
            IncompatibleMeasureError("step", "gaussian:0:1"),
            UnsupportedVariantError("cylinder_exact", "line_indicator"),
            ComplexityError("too many assignments"),
            AdmissibleTupleExhaustedError(10, "triangle_free"),
            ConfigError("bad"),
            ValidationError("bad"),
        ],
    )
    def test_all_are_graph_errors(self, error):
        """Test every library error is caught by GraphError."""
        assert isinstance(error, GraphError)


class TestIntervalErrors:
    """Tests for interval-level errors."""

    def test_empty_set(self):
        """Test the operation is named."""
        error = EmptySetError("max")
        assert error.operation == "max"
        assert "max" in error.message

    def test_parse_error(self):
        """Test text and reason are kept."""
        error = IntervalParseError("(2,1)", "lo > hi")
        assert (error.text, error.reason) == ("(2,1)", "lo > hi")
        assert "'(2,1)'" in str(error)


class TestConstructionErrors:
    """Tests for construction errors."""

    def test_step_limit(self):
        """Test requested steps and limit."""
        error = StepLimitError(16, 5)
        assert (error.requested, error.limit) == (16, 5)
        assert "16 steps" in str(error)

    def test_construction_error_with_step(self):
        """Test the step number prefixes the message."""
        assert str(ConstructionError("no slot", step=4)) == "Construction step 4 failed: no slot"
        assert ConstructionError("no slot").step is None

    def test_infeasible_cover(self):
        """Test mode and halvings are recorded."""
        error = InfeasibleCoverError("no cover", mode="triangle_free", halvings=64)
        assert error.halvings == 64
        assert str(error) == "Infeasible cover (triangle_free): no cover"

    def test_loop(self):
        """Test the vertex is named."""
        assert LoopError("1/2").vertex == "1/2"

    def test_precondition(self):
        """Test the message prefix."""
        assert str(PreconditionError("white 1 and 2 are adjacent")).startswith("Precondition violated:")


class TestSamplingErrors:
    """Tests for sampling and measurement errors."""

    def test_incompatible_measure(self):
        """Test graphon and measure are kept."""
        error = IncompatibleMeasureError("step", "gaussian:0:5")
        assert (error.graphon, error.measure) == ("step", "gaussian:0:5")

    def test_unsupported_variant(self):
        """Test operation and variant are kept."""
        error = UnsupportedVariantError("cylinder_exact", "plane_indicator")
        assert error.operation == "cylinder_exact"
        assert "plane_indicator" in str(error)

    def test_complexity(self):
        """Test the message prefix."""
        assert str(ComplexityError("2^30 assignments")) == "Exact evaluation refused: 2^30 assignments"

    def test_tuple_exhausted(self):
        """Test attempts and mode are kept."""
        error = AdmissibleTupleExhaustedError(10_000, "ks_free:4")
        assert (error.attempts, error.mode) == (10_000, "ks_free:4")


class TestConfigAndValidation:
    """Tests for ConfigError and ValidationError."""

    def test_config_error(self):
        """Test config key tracking."""
        error = ConfigError("UG_MAX_STEPS is not an int", config_key="UG_MAX_STEPS")
        assert error.config_key == "UG_MAX_STEPS"
        assert str(error) == "Configuration error: UG_MAX_STEPS is not an int"

    def test_validation_error(self):
        """Test field tracking."""
        error = ValidationError("p must lie in [0, 1]", field="p")
        assert error.field == "p"
        assert str(error) == "Validation error: p must lie in [0, 1]"
