"""Tests for the verify command."""

import json

from src.commands import EXIT_DIFFERENT, EXIT_ERROR, EXIT_OK, GenCommand, VerifyCommand


class TestVerifyCommand:
    """Tests for hard and reported checks."""

    def test_triangle_fails_clique_check(self, triangle_file):
        """Test K_3 fails clique:3 with exit status 2."""
        result = VerifyCommand().run(input=str(triangle_file), checks=["clique:3"])
        assert result.exit_code == EXIT_DIFFERENT
        assert result.data["checks"][0]["detail"]["found"] == [0, 1, 2]
        assert "clique:3: FAIL  witness 0 1 2" in result.output

    def test_empty_graph_passes(self, empty_file):
        """Test the empty graph has no triangle."""
        result = VerifyCommand().run(input=str(empty_file), checks=["clique:3"])
        assert result.exit_code == EXIT_OK
        assert result.output.endswith("result: pass\n")

    def test_census_hard_check(self, triangle_file):
        """Test K_3 misses three of the four triple classes."""
        result = VerifyCommand().run(input=str(triangle_file), checks=["census:3"])
        assert result.exit_code == EXIT_DIFFERENT
        detail = result.data["checks"][0]["detail"]
        assert detail["classes_found"] == [7]
        assert "missing: []" in result.output

    def test_reported_checks_never_fail(self, triangle_file):
        """Test extension, purity and degree checks only report."""
        result = VerifyCommand().run(
            input=str(triangle_file), checks=["extension:2:0", "purity", "degrees"], seed=1, tuples=5
        )
        assert result.exit_code == EXIT_OK
        assert "extension:2:0: 5/5 satisfied" in result.output
        assert [c["hard"] for c in result.data["checks"]] == [False, False, False]

    def test_extension_needs_seed(self, triangle_file):
        """Test an edge list carries no seed for sampled checks."""
        result = VerifyCommand().run(input=str(triangle_file), checks=["extension:1:1"])
        assert result.exit_code == EXIT_ERROR
        assert "seed" in result.error

    def test_seed_from_json_file(self, tmp_path):
        """Test JSON graphs supply their sampling seed."""
        path = tmp_path / "line.json"
        GenCommand().run(model="line-trianglefree", n=60, seed=7, format="json", out=str(path))
        result = VerifyCommand().run(
            input=str(path), checks=["clique:3", "extension:1:1:triangle_free"], tuples=20, report="json"
        )
        assert result.exit_code == EXIT_OK
        report = json.loads(result.output)
        assert report["graph"]["seed"] == 7
        assert report["checks"][1]["detail"]["tuples_tested"] == 20

    def test_missing_file(self, tmp_path):
        """Test unreadable input exits 1."""
        result = VerifyCommand().run(input=str(tmp_path / "nope.txt"), checks=["purity"])
        assert result.exit_code == EXIT_ERROR

    def test_malformed_edge_list(self, tmp_path):
        """Test a header announcing too many edges."""
        path = tmp_path / "bad.txt"
        path.write_text("3 2\n0 1\n", encoding="utf-8")
        result = VerifyCommand().run(input=str(path), checks=["clique:3"])
        assert result.exit_code == EXIT_ERROR
        assert "announces 2 edges" in result.error

    def test_unknown_check(self, empty_file):
        """Test check names outside the grammar."""
        result = VerifyCommand().run(input=str(empty_file), checks=["diameter"])
        assert result.error_type == "validation"
