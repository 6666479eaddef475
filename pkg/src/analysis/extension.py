"""Extension-axiom statistics.

A tuple (U, W) of disjoint vertex sets is satisfied when some vertex outside
U and W is adjacent to every vertex of U and to none of W. In triangle-free
mode U must be independent; in K_s-free mode U must be K_{s-1}-free.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from src.construction.patterns import FilterMode, PatternFilter
from src.core.exceptions import AdmissibleTupleExhaustedError, ValidationError
from src.core.rng import make_generator
from src.observability.decorators import traced_operation
from src.sampling.sampled_graph import SampledGraph

from .cliques import find_clique

logger = logging.getLogger(__name__)


@dataclass
class ExtensionReport:
    """Tally of extension tuples sampled from one graph."""

    white_size: int
    black_size: int
    mode: str = "plain"
    tuples_tested: int = 0
    tuples_satisfied: int = 0
    sample_failures: list[dict] = field(default_factory=list)

    @property
    def fraction(self) -> float:
        return self.tuples_satisfied / self.tuples_tested if self.tuples_tested else 0.0

    def summary(self) -> dict:
        return {
            "white_size": self.white_size,
            "black_size": self.black_size,
            "mode": self.mode,
            "tuples_tested": self.tuples_tested,
            "tuples_satisfied": self.tuples_satisfied,
            "fraction": self.fraction,
            "sample_failures": self.sample_failures,
        }


def extension_witness(graph: SampledGraph, whites, blacks) -> int | None:
    """Smallest vertex outside whites and blacks joined to all whites and no blacks."""
    whites = np.asarray(whites, dtype=np.int64)
    blacks = np.asarray(blacks, dtype=np.int64)
    candidates = np.ones(graph.n, dtype=bool)
    if len(whites):
        candidates &= graph.adjacency[whites].all(axis=0)
    if len(blacks):
        candidates &= ~graph.adjacency[blacks].any(axis=0)
    candidates[whites] = False
    candidates[blacks] = False
    hits = np.flatnonzero(candidates)
    return int(hits[0]) if len(hits) else None


def admissible_whites(graph: SampledGraph, whites, mode: PatternFilter) -> bool:
    bound = mode.clique_bound
    if mode.mode is FilterMode.PLAIN or bound is None:
        return True
    forbidden = bound - 1
    if len(whites) < forbidden:
        return True
    sub = SampledGraph(len(whites), graph.induced(list(whites)))
    return find_clique(sub, forbidden) is None


def _failure_record(graph: SampledGraph, whites, blacks) -> dict:
    record = {"whites": [int(v) for v in whites], "blacks": [int(v) for v in blacks]}
    if graph.coords is not None or graph.blocks is not None:
        record["white_coords"] = [graph.coordinate_text(int(v)) for v in whites]
        record["black_coords"] = [graph.coordinate_text(int(v)) for v in blacks]
    return record


@traced_operation("extension_stats")
def extension_stats(
    graph: SampledGraph,
    white_size: int,
    black_size: int,
    tuples: int,
    seed: int,
    mode: PatternFilter | None = None,
    resample_limit: int = 10_000,
    failure_cap: int = 20,
) -> ExtensionReport:
    """Sample ``tuples`` random admissible (U, W) pairs and count the satisfied ones.

    Raises:
        ValidationError: If the tuple sizes do not fit in the graph.
        AdmissibleTupleExhaustedError: If ``resample_limit`` draws in a row are inadmissible.
    """
    mode = mode or PatternFilter.plain()
    size = white_size + black_size
    if white_size < 0 or black_size < 0 or size < 1:
        raise ValidationError("tuple sizes must be non-negative and not both zero")
    if size > graph.n:
        raise ValidationError(f"{size} tuple vertices do not fit in {graph.n} vertices", "n")
    if tuples < 1:
        raise ValidationError(f"tuples must be at least 1, got {tuples}", "tuples")

    rng = make_generator(seed)
    report = ExtensionReport(white_size, black_size, mode=mode.text())
    for _ in range(tuples):
        for _attempt in range(resample_limit):
            chosen = rng.choice(graph.n, size=size, replace=False)
            whites, blacks = chosen[:white_size], chosen[white_size:]
            if admissible_whites(graph, whites, mode):
                break
        else:
            raise AdmissibleTupleExhaustedError(resample_limit, mode.text())

        report.tuples_tested += 1
        if extension_witness(graph, whites, blacks) is not None:
            report.tuples_satisfied += 1
        elif len(report.sample_failures) < failure_cap:
            report.sample_failures.append(_failure_record(graph, whites, blacks))

    logger.debug(
        "Extension %d/%d on n=%d: %d of %d satisfied",
        white_size,
        black_size,
        graph.n,
        report.tuples_satisfied,
        report.tuples_tested,
    )
    return report
