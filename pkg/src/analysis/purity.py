"""Duplicate-neighbourhood diagnostic.

Distinct vertices with identical neighbourhoods are counted and reported.
This is a diagnostic only; no finite sample certifies that x -> E_x is
injective.
"""

from dataclasses import dataclass, field

import numpy as np

from src.sampling.sampled_graph import SampledGraph


@dataclass
class PurityReport:
    """``duplicate_groups`` lists at most the first ``group_cap`` groups."""

    n: int
    duplicate_vertices: int = 0
    duplicate_groups: list[list[int]] = field(default_factory=list)

    @property
    def fraction(self) -> float:
        return self.duplicate_vertices / self.n if self.n else 0.0

    def summary(self) -> dict:
        return {
            "n": self.n,
            "duplicate_vertices": self.duplicate_vertices,
            "duplicate_groups": self.duplicate_groups,
            "fraction": self.fraction,
        }


def duplicate_neighbourhoods(graph: SampledGraph, group_cap: int = 20) -> PurityReport:
    """Group vertices by identical adjacency rows; groups of size >= 2 are duplicates."""
    if graph.n == 0:
        return PurityReport(0)
    _, inverse, counts = np.unique(graph.adjacency, axis=0, return_inverse=True, return_counts=True)
    inverse = np.asarray(inverse).reshape(-1)
    groups = sorted(np.flatnonzero(inverse == row).tolist() for row in np.flatnonzero(counts > 1))
    return PurityReport(
        n=graph.n,
        duplicate_vertices=int(counts[counts > 1].sum()),
        duplicate_groups=groups[:group_cap],
    )
