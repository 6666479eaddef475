"""Finite graphs sampled from a graphon, or loaded from a graph file."""

from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx
import numpy as np

from src.core.exceptions import ValidationError


@dataclass
class SampledGraph:
    """Symmetric 0/1 adjacency with zero diagonal plus sampling metadata.

    Attributes:
        n: Vertex count
        adjacency: n x n boolean matrix
        coords: Exact vertex coordinates for point-based models, else None
        blocks: Block labels for step-graphon samples, else None
        seed: Seed the sample was drawn with (None for loaded graphs without one)
        descriptor: Model descriptor, e.g. ``er:3/10`` or ``line-trianglefree``
    """

    n: int
    adjacency: np.ndarray
    coords: list[Fraction] | None = None
    blocks: np.ndarray | None = None
    seed: int | None = None
    descriptor: str | None = None
    _nx: nx.Graph | None = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        self.adjacency = np.asarray(self.adjacency, dtype=bool)
        if self.adjacency.shape != (self.n, self.n):
            raise ValidationError(
                f"adjacency has shape {self.adjacency.shape}, expected ({self.n}, {self.n})"
            )
        if not np.array_equal(self.adjacency, self.adjacency.T):
            raise ValidationError("adjacency matrix is not symmetric")
        if self.n and self.adjacency.diagonal().any():
            raise ValidationError("adjacency matrix has a nonzero diagonal")
        if self.coords is not None and len(self.coords) != self.n:
            raise ValidationError(f"{len(self.coords)} coordinates for {self.n} vertices")

    @classmethod
    def from_edges(
        cls, n: int, edges: list[tuple[int, int]], **metadata
    ) -> "SampledGraph":
        adjacency = np.zeros((n, n), dtype=bool)
        for i, j in edges:
            if not 0 <= i < n or not 0 <= j < n or i == j:
                raise ValidationError(f"edge ({i}, {j}) is invalid for {n} vertices")
            adjacency[i, j] = adjacency[j, i] = True
        return cls(n, adjacency, **metadata)

    def edges(self) -> list[tuple[int, int]]:
        """Edges (i, j) with i < j in ascending row-major order."""
        rows, cols = np.nonzero(np.triu(self.adjacency, k=1))
        return [(int(i), int(j)) for i, j in zip(rows, cols, strict=True)]

    @property
    def edge_count(self) -> int:
        return int(np.triu(self.adjacency, k=1).sum())

    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)

    def neighbours(self, v: int) -> np.ndarray:
        return np.flatnonzero(self.adjacency[v])

    def induced(self, vertices: list[int]) -> np.ndarray:
        index = np.asarray(vertices)
        return self.adjacency[np.ix_(index, index)]

    def to_networkx(self) -> nx.Graph:
        """networkx view, built once and cached."""
        if self._nx is None:
            graph = nx.Graph()
            graph.add_nodes_from(range(self.n))
            graph.add_edges_from(self.edges())
            self._nx = graph
        return self._nx

    def coordinate_text(self, v: int) -> str | None:
        if self.coords is not None:
            return str(self.coords[v])
        if self.blocks is not None:
            return f"block {int(self.blocks[v])}"
        return None

    def summary(self) -> dict:
        return {
            "n": self.n,
            "edges": self.edge_count,
            "seed": self.seed,
            "model": self.descriptor,
        }
