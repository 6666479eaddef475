"""Tests for sampled graphs and graph files."""

import io
from fractions import Fraction

import numpy as np
import pytest

from src.contracts.exceptions import ContractValidationError
from src.core.exceptions import ValidationError
from src.sampling.graph_io import (
    GraphFormat,
    detect_format,
    graph_from_dict,
    load_graph,
    read_edgelist,
    read_json,
    write_edgelist,
    write_graph,
    write_json,
)
from src.sampling.sampled_graph import SampledGraph


class TestSampledGraph:
    """Tests for the SampledGraph value type."""

    def test_from_edges(self, triangle):
        """Test edges, counts and degrees."""
        assert triangle.edges() == [(0, 1), (0, 2), (1, 2)]
        assert triangle.edge_count == 3
        assert triangle.degrees().tolist() == [2, 2, 2]

    def test_invalid_edge(self):
        """Test loops and out-of-range endpoints."""
        with pytest.raises(ValidationError):
            SampledGraph.from_edges(3, [(1, 1)])
        with pytest.raises(ValidationError):
            SampledGraph.from_edges(3, [(0, 3)])

    def test_asymmetric_adjacency(self):
        """Test the adjacency must be symmetric."""
        with pytest.raises(ValidationError):
            SampledGraph(2, np.array([[0, 1], [0, 0]]))

    def test_nonzero_diagonal(self):
        """Test loops in the matrix."""
        with pytest.raises(ValidationError):
            SampledGraph(2, np.eye(2))

    def test_coordinate_count(self):
        """Test one coordinate per vertex."""
        with pytest.raises(ValidationError):
            SampledGraph(2, np.zeros((2, 2)), coords=[Fraction(0)])

    def test_neighbours_and_induced(self, five_cycle):
        """Test neighbourhoods and induced submatrices."""
        assert five_cycle.neighbours(0).tolist() == [1, 4]
        assert five_cycle.induced([0, 1, 2]).sum() == 4

    def test_networkx_view_is_cached(self, five_cycle):
        """Test the networkx graph is built once."""
        view = five_cycle.to_networkx()
        assert view is five_cycle.to_networkx()
        assert view.number_of_edges() == 5

    def test_coordinate_text(self):
        """Test coordinates, block labels and neither."""
        assert SampledGraph(1, np.zeros((1, 1)), coords=[Fraction(1, 3)]).coordinate_text(0) == "1/3"
        assert SampledGraph(1, np.zeros((1, 1)), blocks=np.array([2])).coordinate_text(0) == "block 2"
        assert SampledGraph(1, np.zeros((1, 1))).coordinate_text(0) is None


class TestEdgeList:
    """Tests for the edge list format."""

    def test_write(self, triangle):
        """Test header plus ascending edges."""
        out = io.StringIO()
        write_edgelist(triangle, out)
        assert out.getvalue() == "3 3\n0 1\n0 2\n1 2\n"

    def test_read_with_comments(self):
        """Test comments and blank lines are skipped."""
        graph = read_edgelist(io.StringIO("# sample\n\n3 1\n0 2  # edge\n"))
        assert graph.n == 3
        assert graph.edges() == [(0, 2)]

    def test_isolated_vertices(self):
        """Test a graph with no edges."""
        graph = read_edgelist(io.StringIO("4 0\n"))
        assert graph.n == 4
        assert graph.edge_count == 0

    @pytest.mark.parametrize(
        "text",
        [
            "",
            "3\n",
            "3 2\n0 1\n",
            "3 2\n0 2\n0 1\n",
            "3 1\n1 0\n",
            "3 1\n0 3\n",
            "3 1\n0 x\n",
            "3 2\n0 1\n0 1\n",
        ],
    )
    def test_malformed(self, text):
        """Test bad headers, counts, order and values."""
        with pytest.raises(ValidationError):
            read_edgelist(io.StringIO(text))


class TestJsonFormat:
    """Tests for the JSON graph format."""

    def test_coordinates_survive(self):
        """Test coordinates, seed and model survive a write and read."""
        graph = SampledGraph.from_edges(
            3, [(0, 2)], coords=[Fraction(-1, 2), Fraction(0), Fraction(7, 3)], seed=9, descriptor="er:1/2"
        )
        out = io.StringIO()
        write_json(graph, out)
        loaded = read_json(io.StringIO(out.getvalue()))
        assert loaded.coords == graph.coords
        assert loaded.seed == 9
        assert loaded.descriptor == "er:1/2"
        assert loaded.edges() == [(0, 2)]

    def test_blocks_survive(self):
        """Test block labels are kept."""
        graph = SampledGraph.from_edges(2, [(0, 1)], blocks=np.array([0, 1]))
        out = io.StringIO()
        write_graph(graph, out, "json")
        assert read_json(io.StringIO(out.getvalue())).blocks.tolist() == [0, 1]

    def test_schema_violation(self):
        """Test a document without edges."""
        with pytest.raises(ContractValidationError):
            graph_from_dict({"n": 3})

    def test_edge_order_violation(self):
        """Test i < j is enforced."""
        with pytest.raises(ValidationError):
            graph_from_dict({"n": 3, "edges": [[2, 1]]})

    def test_invalid_json(self):
        """Test text that is not JSON."""
        with pytest.raises(ValidationError):
            read_json(io.StringIO("{n: 3"))


class TestLoadGraph:
    """Tests for loading graph files."""

    def test_format_from_extension(self, tmp_path):
        """Test .json selects JSON, anything else the edge list."""
        assert detect_format(tmp_path / "g.json") is GraphFormat.JSON
        assert detect_format(tmp_path / "g.txt") is GraphFormat.EDGELIST

    def test_load_both_formats(self, tmp_path, five_cycle):
        """Test loading what was written."""
        for name, fmt in (("g.txt", "edgelist"), ("g.json", "json")):
            path = tmp_path / name
            with path.open("w", encoding="utf-8") as stream:
                write_graph(five_cycle, stream, fmt)
            assert load_graph(path).edges() == five_cycle.edges()

    def test_explicit_format(self, tmp_path, triangle):
        """Test an explicit format overrides the extension."""
        path = tmp_path / "g.data"
        with path.open("w", encoding="utf-8") as stream:
            write_json(triangle, stream)
        assert load_graph(path, "json").edge_count == 3

    def test_missing_file(self, tmp_path):
        """Test an unreadable path."""
        with pytest.raises(ValidationError):
            load_graph(tmp_path / "absent.txt")
