"""Shared test fixtures for all tests."""

from fractions import Fraction

import pytest

from src.construction.intervals import IntervalSet
from src.core.config import AppConfig
from src.sampling.graphon import StepGraphon
from src.sampling.sampled_graph import SampledGraph

SLOW_SEEDS = range(1, 51)


@pytest.fixture
def app_config():
    """Configuration with built-in defaults only."""
    return AppConfig()


@pytest.fixture
def two_block_graphon():
    """Bipartite two-block step graphon with equal masses."""
    return StepGraphon(
        masses=(Fraction(1, 2), Fraction(1, 2)),
        values=((Fraction(0), Fraction(1)), (Fraction(1), Fraction(0))),
    )


@pytest.fixture
def step_file(tmp_path):
    """The two-block step graphon as a JSON spec file."""
    path = tmp_path / "step.json"
    path.write_text('{"masses": ["1/2", "1/2"], "values": [[0, 1], [1, 0]]}\n', encoding="utf-8")
    return path


@pytest.fixture
def triangle():
    """K_3."""
    return SampledGraph.from_edges(3, [(0, 1), (0, 2), (1, 2)])


@pytest.fixture
def five_cycle():
    """C_5, triangle-free."""
    return SampledGraph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])


@pytest.fixture
def interval_set():
    """Factory parsing the textual interval format."""
    return IntervalSet.parse
