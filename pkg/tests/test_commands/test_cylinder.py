"""Tests for the cylinder command."""

import json

from src.commands import EXIT_ERROR, EXIT_OK, CylinderCommand


class TestCylinderCommand:
    """Tests for exact and Monte Carlo cylinder probabilities."""

    def test_exact_half(self, edge_pattern):
        """Test er:1/2 gives 1/2 on a single edge."""
        result = CylinderCommand().run(model="er", p="1/2", pattern=str(edge_pattern), method="exact")
        assert result.exit_code == EXIT_OK
        assert "value: 1/2\n" in result.output
        assert result.data["estimate"]["exact"] == "1/2"

    def test_exact_step(self, step_file, edge_pattern):
        """Test the bipartite step graphon on a single edge."""
        result = CylinderCommand().run(
            model="step", step=str(step_file), pattern=str(edge_pattern), method="exact", report="json"
        )
        assert json.loads(result.output)["estimate"]["exact"] == "1/2"

    def test_exact_unsupported_for_indicators(self, edge_pattern):
        """Test the line model has no exact evaluation."""
        result = CylinderCommand().run(model="line-universal", pattern=str(edge_pattern), method="exact")
        assert result.exit_code == EXIT_ERROR
        assert result.error_type == "UnsupportedVariantError"

    def test_monte_carlo(self, step_file, edge_pattern):
        """Test mc reports the sample count and an error bar."""
        result = CylinderCommand().run(
            model="step",
            step=str(step_file),
            pattern=str(edge_pattern),
            method="mc",
            samples=4000,
            seed=3,
            threads=2,
        )
        assert result.success
        estimate = result.data["estimate"]
        assert estimate["samples"] == 4000
        assert abs(estimate["value"] - 0.5) < 4 * estimate["std_error"]
        assert "(4000 samples)" in result.output

    def test_degenerate_flag_in_report(self, edge_pattern):
        """Test a constant integrand is flagged."""
        result = CylinderCommand().run(model="er:1", pattern=str(edge_pattern), method="mc", samples=50, seed=1)
        assert "degenerate" in result.output

    def test_mc_needs_samples(self, edge_pattern):
        """Test mc without samples or seed."""
        result = CylinderCommand().run(model="er:1/2", pattern=str(edge_pattern), method="mc")
        assert result.error_type == "validation"

    def test_bad_pattern(self, tmp_path):
        """Test an asymmetric pattern file."""
        path = tmp_path / "bad.txt"
        path.write_text("2\n0 1\n0 0\n", encoding="utf-8")
        result = CylinderCommand().run(model="er:1/2", pattern=str(path), method="exact")
        assert result.exit_code == EXIT_ERROR
