"""Generalized measurable graphs ``(X, m, omega)`` and two-step sampling.

A sample first draws vertices x_1..x_n i.i.d. from the vertex measure (the
vertex stream), then joins each pair i < j independently with probability
omega(x_i, x_j) (the edge stream). Indicator graphons take only the values
0 and 1, so their samples are random in the vertices only and never touch the
edge stream.

Vertices are handled in bulk as a :class:`VertexBatch`: grid numerators for
point-based models, block labels for step graphons, nothing at all for
constant graphons.
"""

import json
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import networkx as nx
import numpy as np

from src.construction.intervals import Rational, to_fraction
from src.construction.ksfree_graph import PlaneGraphModel
from src.construction.line_graph import LineGraphModel
from src.contracts.schema_parser import validate_document
from src.core.exceptions import (
    GraphError,
    IncompatibleMeasureError,
    LoopError,
    PreconditionError,
    ValidationError,
)
from src.core.rng import make_generator, vertex_edge_streams
from src.observability.decorators import traced_operation

from .measures import MeasureKind, VertexMeasure, grid_bounds, to_coordinates
from .sampled_graph import SampledGraph

logger = logging.getLogger(__name__)

DEFAULT_BITS = 40
_ROW_CHUNK = 512


@dataclass(frozen=True)
class VertexBatch:
    """Sampled vertices in the representation the graphon needs."""

    count: int
    numerators: np.ndarray | None = None
    blocks: np.ndarray | None = None
    bits: int = DEFAULT_BITS

    def take(self, index: np.ndarray | list[int]) -> "VertexBatch":
        index = np.asarray(index, dtype=np.int64)
        return VertexBatch(
            count=len(index),
            numerators=None if self.numerators is None else self.numerators[index],
            blocks=None if self.blocks is None else self.blocks[index],
            bits=self.bits,
        )

    def points(self) -> list[Fraction] | None:
        return None if self.numerators is None else to_coordinates(self.numerators, self.bits)


class Graphon(ABC):
    """Symmetric measurable omega: X x X -> [0, 1]."""

    variant: str

    @abstractmethod
    def omega(self, x, y) -> Fraction:
        """Edge probability between two vertices."""

    @abstractmethod
    def is_deterministic_in_edges(self) -> bool:
        """True iff omega only takes the values 0 and 1."""

    @abstractmethod
    def check_measure(self, measure: VertexMeasure) -> None:
        """Raise IncompatibleMeasureError if ``measure`` cannot drive this graphon."""

    @abstractmethod
    def cross(self, a: VertexBatch, b: VertexBatch) -> np.ndarray:
        """|a| x |b| matrix of omega values as floats."""

    @abstractmethod
    def pairwise(self, a: VertexBatch, b: VertexBatch) -> np.ndarray:
        """omega(a[i], b[i]) for aligned batches of equal length."""

    @abstractmethod
    def describe(self) -> str:
        pass

    def draw(self, measure: VertexMeasure, rng: np.random.Generator, n: int, bits: int) -> VertexBatch:
        """Draw n vertices from ``measure`` in this graphon's representation."""
        self.check_measure(measure)
        if measure.continuous:
            return VertexBatch(n, numerators=measure.draw_numerators(rng, n, bits), bits=bits)
        return VertexBatch(n, blocks=measure.draw_blocks(rng, n), bits=bits)

    def summary(self) -> dict:
        return {"graphon": self.describe(), "deterministic": self.is_deterministic_in_edges()}


@dataclass(frozen=True)
class ConstantGraphon(Graphon):
    """omega = p everywhere: the Erdős–Rényi model G(n, p)."""

    p: Fraction
    variant = "constant"

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", to_fraction(self.p))
        if not 0 <= self.p <= 1:
            raise ValidationError(f"p must lie in [0, 1], got {self.p}", "p")

    def omega(self, x, y) -> Fraction:
        return self.p

    def is_deterministic_in_edges(self) -> bool:
        return self.p in (0, 1)

    def check_measure(self, measure: VertexMeasure) -> None:
        return None

    def draw(self, measure: VertexMeasure, rng: np.random.Generator, n: int, bits: int) -> VertexBatch:
        # vertex positions are irrelevant; the vertex stream is left untouched
        return VertexBatch(n, bits=bits)

    def cross(self, a: VertexBatch, b: VertexBatch) -> np.ndarray:
        return np.full((a.count, b.count), float(self.p))

    def pairwise(self, a: VertexBatch, b: VertexBatch) -> np.ndarray:
        return np.full(a.count, float(self.p))

    def describe(self) -> str:
        return f"er:{self.p}"


@dataclass(frozen=True)
class StepGraphon(Graphon):
    """Block model: omega(x, y) = values[x][y] for block labels x, y.

    Within-block pairs of distinct vertices use the diagonal value
    ``values[b][b]``; loops are never evaluated.
    """

    masses: tuple[Fraction, ...]
    values: tuple[tuple[Fraction, ...], ...]
    claimed_ks_free: int | None = None
    source: str | None = None
    _float_values: np.ndarray = field(init=False, repr=False, compare=False)
    variant = "step"

    def __post_init__(self) -> None:
        masses = tuple(to_fraction(m) for m in self.masses)
        values = tuple(tuple(to_fraction(v) for v in row) for row in self.values)
        k = len(masses)
        if k == 0:
            raise ValidationError("step graphon needs at least one block", "masses")
        if any(m < 0 for m in masses) or sum(masses) != 1:
            raise ValidationError(f"masses must be non-negative and sum to 1, got {sum(masses)}", "masses")
        if len(values) != k or any(len(row) != k for row in values):
            raise ValidationError(f"values must be a {k} x {k} matrix", "values")
        for i in range(k):
            for j in range(k):
                if not 0 <= values[i][j] <= 1:
                    raise ValidationError(f"values[{i}][{j}] = {values[i][j]} is outside [0, 1]", "values")
                if values[i][j] != values[j][i]:
                    raise ValidationError(f"values is not symmetric at ({i}, {j})", "values")
        object.__setattr__(self, "masses", masses)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "_float_values", np.array([[float(v) for v in row] for row in values]))

    @classmethod
    def from_dict(cls, data: dict, source: str | None = None) -> "StepGraphon":
        validate_document(data, "step_graphon.schema.json")
        return cls(
            masses=tuple(_json_rational(m) for m in data["masses"]),
            values=tuple(tuple(_json_rational(v) for v in row) for row in data["values"]),
            claimed_ks_free=data.get("ks_free"),
            source=source,
        )

    @classmethod
    def from_json(cls, path: str | Path) -> "StepGraphon":
        """Load and validate a step-graphon file.

        Raises:
            ValidationError: If the file is unreadable, not JSON, or semantically invalid.
            ContractValidationError: If it does not match the schema.
        """
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise ValidationError(f"cannot read step graphon {path}: {e}", "path") from e
        return cls.from_dict(data, source=str(path))

    @property
    def blocks(self) -> int:
        return len(self.masses)

    def omega(self, x, y) -> Fraction:
        return self.values[int(x)][int(y)]

    def is_deterministic_in_edges(self) -> bool:
        return all(v in (0, 1) for row in self.values for v in row)

    def check_measure(self, measure: VertexMeasure) -> None:
        if measure.kind is not MeasureKind.DISCRETE_BLOCKS or measure.masses != self.masses:
            raise IncompatibleMeasureError(self.describe(), measure.text())

    def default_measure(self) -> VertexMeasure:
        return VertexMeasure.discrete_blocks(list(self.masses))

    def cross(self, a: VertexBatch, b: VertexBatch) -> np.ndarray:
        return self._float_values[np.ix_(a.blocks, b.blocks)]

    def pairwise(self, a: VertexBatch, b: VertexBatch) -> np.ndarray:
        return self._float_values[a.blocks, b.blocks]

    def describe(self) -> str:
        return f"step:{self.source}" if self.source else f"step:{self.blocks}-block"


def _json_rational(value) -> Fraction:
    if isinstance(value, float):
        # JSON numbers with a fraction part are read by their shortest decimal text
        return Fraction(repr(value))
    return to_fraction(value.strip() if isinstance(value, str) else value)


class _IndicatorGraphon(Graphon):
    """omega = indicator of an exact construction's edge set."""

    def is_deterministic_in_edges(self) -> bool:
        return True

    def check_measure(self, measure: VertexMeasure) -> None:
        if not measure.continuous:
            raise IncompatibleMeasureError(self.describe(), measure.text())

    @abstractmethod
    def adjacent(self, x: Fraction, y: Fraction) -> bool:
        pass

    def omega(self, x, y) -> Fraction:
        a, b = to_fraction(x), to_fraction(y)
        if a == b:
            raise LoopError(a)
        return Fraction(1) if self.adjacent(a, b) else Fraction(0)


class LineIndicatorGraphon(_IndicatorGraphon):
    """x ~ y iff |x - y| lies in the closure of the line model's Z."""

    variant = "line_indicator"

    def __init__(self, model: LineGraphModel):
        self.model = model

    def adjacent(self, x: Fraction, y: Fraction) -> bool:
        return self.model.adjacent(x, y)

    def _distance_bounds(self, span: int, bits: int) -> tuple[np.ndarray, np.ndarray]:
        """Closed grid ranges [lo, hi] covering Z-closure within [0, span / 2^bits]."""
        closure = self.model.closure_between(0, Fraction(span, 1 << bits))
        bounds = [grid_bounds(part.lo, part.hi, bits) for part in closure]
        bounds = [(lo, hi) for lo, hi in bounds if lo <= hi]
        los = np.array([lo for lo, _ in bounds], dtype=np.int64)
        his = np.array([hi for _, hi in bounds], dtype=np.int64)
        return los, his

    @staticmethod
    def _member(diff: np.ndarray, los: np.ndarray, his: np.ndarray) -> np.ndarray:
        if len(los) == 0:
            return np.zeros(diff.shape, dtype=bool)
        idx = np.searchsorted(los, diff, side="right") - 1
        return (idx >= 0) & (diff <= his[np.maximum(idx, 0)])

    def cross(self, a: VertexBatch, b: VertexBatch) -> np.ndarray:
        out = np.zeros((a.count, b.count))
        if a.count == 0 or b.count == 0:
            return out
        span = int(max(a.numerators.max(), b.numerators.max()) - min(a.numerators.min(), b.numerators.min()))
        los, his = self._distance_bounds(span, a.bits)
        for start in range(0, a.count, _ROW_CHUNK):
            rows = a.numerators[start : start + _ROW_CHUNK]
            diff = np.abs(rows[:, None] - b.numerators[None, :])
            out[start : start + _ROW_CHUNK] = self._member(diff, los, his)
        return out

    def pairwise(self, a: VertexBatch, b: VertexBatch) -> np.ndarray:
        if a.count == 0:
            return np.zeros(0)
        diff = np.abs(a.numerators - b.numerators)
        los, his = self._distance_bounds(int(diff.max()), a.bits)
        return self._member(diff, los, his).astype(float)

    def describe(self) -> str:
        return self.model.describe()


class PlaneIndicatorGraphon(_IndicatorGraphon):
    """x ~ y iff (x, y) lies in the plane model's symmetric box set."""

    variant = "plane_indicator"

    def __init__(self, model: PlaneGraphModel):
        self.model = model

    def adjacent(self, x: Fraction, y: Fraction) -> bool:
        return self.model.adjacent(x, y)

    def _grid_boxes(self, a: VertexBatch, b: VertexBatch):
        """Boxes that can contain a sampled pair, as closed grid ranges."""
        top = int(max(np.abs(a.numerators).max(), np.abs(b.numerators).max()))
        for box in self.model.boxes_below(Fraction(top, 1 << a.bits)):
            yield grid_bounds(box.x.lo, box.x.hi, a.bits), grid_bounds(box.y.lo, box.y.hi, a.bits)

    def cross(self, a: VertexBatch, b: VertexBatch) -> np.ndarray:
        out = np.zeros((a.count, b.count), dtype=bool)
        if a.count == 0 or b.count == 0:
            return out.astype(float)
        for (x_lo, x_hi), (y_lo, y_hi) in self._grid_boxes(a, b):
            in_x = (a.numerators >= x_lo) & (a.numerators <= x_hi)
            in_y = (b.numerators >= y_lo) & (b.numerators <= y_hi)
            if in_x.any() and in_y.any():
                out |= np.outer(in_x, in_y)
        return out.astype(float)

    def pairwise(self, a: VertexBatch, b: VertexBatch) -> np.ndarray:
        out = np.zeros(a.count, dtype=bool)
        if a.count == 0:
            return out.astype(float)
        for (x_lo, x_hi), (y_lo, y_hi) in self._grid_boxes(a, b):
            out |= (
                (a.numerators >= x_lo)
                & (a.numerators <= x_hi)
                & (b.numerators >= y_lo)
                & (b.numerators <= y_hi)
            )
        return out.astype(float)

    def describe(self) -> str:
        return self.model.describe()


# Sampling


def _adjacency(graphon: Graphon, vertices: VertexBatch, edge_rng: np.random.Generator) -> np.ndarray:
    n = vertices.count
    probabilities = graphon.cross(vertices, vertices)
    rows, cols = np.triu_indices(n, k=1)
    if graphon.is_deterministic_in_edges():
        upper = probabilities[rows, cols] >= 1.0
    else:
        # one uniform per pair i < j, row-major
        upper = edge_rng.random(len(rows)) < probabilities[rows, cols]
    adjacency = np.zeros((n, n), dtype=bool)
    adjacency[rows, cols] = upper
    adjacency[cols, rows] = upper
    return adjacency


@traced_operation("sample")
def sample(
    graphon: Graphon, measure: VertexMeasure, n: int, seed: int, bits: int = DEFAULT_BITS
) -> SampledGraph:
    """Draw an n-vertex graph; deterministic in (graphon, measure, n, seed).

    Raises:
        IncompatibleMeasureError: If the measure cannot drive the graphon.
    """
    if n < 0:
        raise ValidationError(f"n must be non-negative, got {n}", "n")
    graphon.check_measure(measure)
    vertex_rng, edge_rng = vertex_edge_streams(seed)
    vertices = graphon.draw(measure, vertex_rng, n, bits)
    adjacency = _adjacency(graphon, vertices, edge_rng)
    logger.debug("Sampled %d vertices from %s with seed %d", n, graphon.describe(), seed)
    return SampledGraph(
        n=n,
        adjacency=adjacency,
        coords=vertices.points(),
        blocks=vertices.blocks,
        seed=seed,
        descriptor=graphon.describe(),
    )


def is_deterministic_in_edges(graphon: Graphon) -> bool:
    return graphon.is_deterministic_in_edges()


def omega(graphon: Graphon, x: Rational | int, y: Rational | int) -> Fraction:
    return graphon.omega(x, y)


# Block-level clique search


def step_graphon_clique(graphon: StepGraphon, s: int) -> list[int] | None:
    """Blocks supporting an s-clique with positive probability, if any.

    A block with a positive diagonal value hosts cliques of every size on its
    own; otherwise an s-clique needs s distinct positive-mass blocks that are
    pairwise joined with positive probability.
    """
    live = [b for b in range(graphon.blocks) if graphon.masses[b] > 0]
    for b in live:
        if graphon.values[b][b] > 0:
            return [b] * s
    blocks = nx.Graph()
    blocks.add_nodes_from(live)
    blocks.add_edges_from(
        (a, b) for i, a in enumerate(live) for b in live[i + 1 :] if graphon.values[a][b] > 0
    )
    for clique in nx.find_cliques(blocks):
        if len(clique) >= s:
            return sorted(clique)[:s]
    return None


def verify_ks_free_claim(graphon: Graphon, s: int) -> None:
    """Accept a K_s-freeness claim only for edge-deterministic graphons that are K_s-free.

    Raises:
        ValidationError: If the claim cannot be certified.
    """
    if not graphon.is_deterministic_in_edges():
        raise ValidationError(
            f"{graphon.describe()} is random in edges; a K_{s}-free model must be deterministic",
            "ks_free",
        )
    if isinstance(graphon, ConstantGraphon):
        if graphon.p == 1:
            raise ValidationError(f"the complete graph contains K_{s}", "ks_free")
    elif isinstance(graphon, StepGraphon):
        clique = step_graphon_clique(graphon, s)
        if clique is not None:
            raise ValidationError(f"blocks {clique} support a K_{s}", "ks_free")
    elif isinstance(graphon, PlaneIndicatorGraphon):
        if graphon.model.s > s:
            raise ValidationError(f"{graphon.describe()} is only K_{graphon.model.s}-free", "ks_free")
    elif isinstance(graphon, LineIndicatorGraphon):
        if not graphon.model.triangle_free:
            raise ValidationError("the universal line model contains every finite graph", "ks_free")


# Generalized universality diagnostic


@dataclass
class UniversalityReport:
    """Monte Carlo view of the witness condition plus exact cross-checks."""

    trials: int
    probes: int
    successes: int = 0
    exact_attempted: int = 0
    exact_verified: int = 0
    exact_inapplicable: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def fraction(self) -> float:
        return self.successes / self.trials if self.trials else 0.0

    def summary(self) -> dict:
        return {
            "trials": self.trials,
            "probes": self.probes,
            "successes": self.successes,
            "fraction": self.fraction,
            "exact_attempted": self.exact_attempted,
            "exact_verified": self.exact_verified,
            "exact_inapplicable": self.exact_inapplicable,
            "failures": self.failures,
        }


def _draw_tuple(
    graphon: Graphon, measure: VertexMeasure, rng: np.random.Generator, bits: int
) -> tuple[VertexBatch, VertexBatch]:
    white_size = int(rng.integers(1, 4))
    black_size = int(rng.integers(0, 4))
    batch = graphon.draw(measure, rng, white_size + black_size, bits)
    if batch.numerators is not None:
        _, first = np.unique(batch.numerators, return_index=True)
        keep = np.sort(first)
    elif batch.blocks is not None:
        # disjoint as label sets: a repeated label keeps its first colour
        _, first = np.unique(batch.blocks, return_index=True)
        keep = np.sort(first)
    else:
        keep = np.arange(batch.count)
    whites = [i for i in keep if i < white_size]
    blacks = [i for i in keep if i >= white_size]
    return batch.take(whites), batch.take(blacks)


def _exact_witness(graphon: Graphon, whites: VertexBatch, blacks: VertexBatch) -> bool | None:
    """Exact witness search; None when the trial's whites are not admissible."""
    white_points, black_points = whites.points(), blacks.points()
    try:
        if isinstance(graphon, LineIndicatorGraphon):
            graphon.model.witness_interval(white_points, black_points)
        elif isinstance(graphon, PlaneIndicatorGraphon):
            graphon.model.witness_box(white_points, black_points)
        else:
            return None
    except PreconditionError:
        return None
    return True


@traced_operation("check_universality")
def check_generalized_universality(
    graphon: Graphon,
    measure: VertexMeasure,
    trials: int,
    probes: int,
    seed: int,
    bits: int = DEFAULT_BITS,
    failure_cap: int = 20,
) -> UniversalityReport:
    """Fraction of trials in which some probe z satisfies prod omega(x_i, z)(1 - omega(y_j, z)) > 0.

    Each trial draws 1-3 white and 0-3 black vertices from ``measure``, then
    ``probes`` candidates. The diagnostic is one-sided: it can confirm
    witnesses, never certify their absence. For indicator models every trial
    is also checked exactly through the construction's witness search.
    """
    if trials < 1 or probes < 1:
        raise ValidationError("trials and probes must be at least 1")
    graphon.check_measure(measure)
    rng = make_generator(seed)
    report = UniversalityReport(trials=trials, probes=probes)

    for trial in range(trials):
        whites, blacks = _draw_tuple(graphon, measure, rng, bits)
        candidates = graphon.draw(measure, rng, probes, bits)
        product = np.ones(probes)
        if whites.count:
            product *= np.prod(graphon.cross(whites, candidates), axis=0)
        if blacks.count:
            product *= np.prod(1.0 - graphon.cross(blacks, candidates), axis=0)
        if (product > 0).any():
            report.successes += 1

        if isinstance(graphon, (LineIndicatorGraphon, PlaneIndicatorGraphon)):
            try:
                outcome = _exact_witness(graphon, whites, blacks)
            except GraphError as e:
                outcome = False
                if len(report.failures) < failure_cap:
                    report.failures.append(
                        {
                            "trial": trial,
                            "whites": [str(p) for p in whites.points()],
                            "blacks": [str(p) for p in blacks.points()],
                            "error": e.message,
                        }
                    )
            if outcome is None:
                report.exact_inapplicable += 1
            else:
                report.exact_attempted += 1
                report.exact_verified += int(outcome)

    return report
