"""Fixtures for command tests: graph, pattern and step files on disk."""

import pytest


@pytest.fixture
def triangle_file(tmp_path):
    path = tmp_path / "triangle.txt"
    path.write_text("3 3\n0 1\n0 2\n1 2\n", encoding="utf-8")
    return path


@pytest.fixture
def empty_file(tmp_path):
    path = tmp_path / "empty.txt"
    path.write_text("4 0\n", encoding="utf-8")
    return path


@pytest.fixture
def edge_pattern(tmp_path):
    path = tmp_path / "edge.txt"
    path.write_text("2\n0 1\n1 0\n", encoding="utf-8")
    return path


@pytest.fixture
def half_step_claimed(tmp_path):
    """A step graphon with 1/2 entries that claims K_4-freeness."""
    path = tmp_path / "claimed.json"
    path.write_text('{"masses": [1], "values": [["1/2"]], "ks_free": 4}\n', encoding="utf-8")
    return path
