"""Cylinder-set probabilities M(C_A) of the random adjacency matrix.

C_A is the event that the top-left n x n corner of the infinite adjacency
matrix equals the pattern A. Its probability is the integral over X^n of
prod_{a_ij = 1} omega(x_i, x_j) * prod_{a_ij = 0} (1 - omega(x_i, x_j)).
"""

import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction
from pathlib import Path

import numpy as np

from src.core.exceptions import ComplexityError, UnsupportedVariantError, ValidationError
from src.core.rng import make_generator, shard_streams
from src.observability.decorators import traced_operation
from src.sampling.graphon import ConstantGraphon, Graphon, StepGraphon, VertexBatch
from src.sampling.measures import VertexMeasure

logger = logging.getLogger(__name__)

DEFAULT_SHARDS = 8
DEFAULT_EXACT_BITS = 24
_SAMPLE_CHUNK = 1 << 16


@dataclass(frozen=True, eq=False)
class CylinderPattern:
    """Symmetric 0/1 matrix with zero diagonal, the corner fixed by C_A."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        entries = np.asarray(self.entries, dtype=np.int64)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ValidationError(f"pattern must be square, got shape {entries.shape}", "pattern")
        if not np.isin(entries, (0, 1)).all():
            raise ValidationError("pattern entries must be 0 or 1", "pattern")
        if not np.array_equal(entries, entries.T):
            raise ValidationError("pattern is not symmetric", "pattern")
        if entries.diagonal().any():
            raise ValidationError("pattern has a nonzero diagonal", "pattern")
        entries = entries.astype(bool)
        entries.flags.writeable = False
        object.__setattr__(self, "entries", entries)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def ones(self) -> int:
        return int(np.triu(self.entries, k=1).sum())

    @property
    def zeros(self) -> int:
        return self.n * (self.n - 1) // 2 - self.ones

    def pairs(self) -> list[tuple[int, int, bool]]:
        """(i, j, a_ij) for i < j in row-major order."""
        return [(i, j, bool(self.entries[i, j])) for i, j in itertools.combinations(range(self.n), 2)]

    def permuted(self, permutation) -> "CylinderPattern":
        """P A P^T for the permutation sending position i to ``permutation[i]``."""
        order = np.argsort(np.asarray(permutation))
        return CylinderPattern(self.entries[np.ix_(order, order)])

    def with_isolated_vertex(self) -> "CylinderPattern":
        grown = np.zeros((self.n + 1, self.n + 1), dtype=bool)
        grown[: self.n, : self.n] = self.entries
        return CylinderPattern(grown)

    @classmethod
    def from_edges(cls, n: int, edges) -> "CylinderPattern":
        entries = np.zeros((n, n), dtype=np.int64)
        for i, j in edges:
            entries[i, j] = entries[j, i] = 1
        return cls(entries)

    @classmethod
    def all_of_order(cls, n: int):
        """Every pattern on n vertices, 2^(n(n-1)/2) in total."""
        pairs = list(itertools.combinations(range(n), 2))
        for bits in itertools.product((0, 1), repeat=len(pairs)):
            yield cls.from_edges(n, [pair for pair, bit in zip(pairs, bits, strict=True) if bit])

    @classmethod
    def parse(cls, text: str, source: str = "<text>") -> "CylinderPattern":
        """Read ``n`` then n rows of n space-separated 0/1 values; ``#`` starts a comment."""
        lines = [line.split("#", 1)[0].strip() for line in text.splitlines()]
        lines = [line for line in lines if line]
        if not lines:
            raise ValidationError(f"{source}: empty pattern file", "pattern")
        try:
            n = int(lines[0])
            rows = [[int(value) for value in line.split()] for line in lines[1:]]
        except ValueError as e:
            raise ValidationError(f"{source}: non-integer entry: {e}", "pattern") from e
        if n < 1:
            raise ValidationError(f"{source}: order must be at least 1, got {n}", "pattern")
        if len(rows) != n or any(len(row) != n for row in rows):
            raise ValidationError(f"{source}: expected {n} rows of {n} values", "pattern")
        return cls(np.array(rows, dtype=np.int64))

    @classmethod
    def from_file(cls, path: str | Path) -> "CylinderPattern":
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise ValidationError(f"cannot read {path}: {e}", "pattern") from e
        return cls.parse(text, str(path))

    def text(self) -> str:
        rows = [" ".join("1" if v else "0" for v in row) for row in self.entries]
        return "\n".join([str(self.n), *rows]) + "\n"

    def summary(self) -> dict:
        return {"n": self.n, "ones": self.ones, "zeros": self.zeros}


class EstimateMethod(StrEnum):
    EXACT = "exact"
    MONTE_CARLO = "monte_carlo"


@dataclass(frozen=True)
class CylinderEstimate:
    """Value of M(C_A) with its standard error.

    ``exact`` holds the rational value for exact evaluations; ``degenerate``
    marks Monte Carlo runs whose integrand never varied.
    """

    value: float
    std_error: float
    method: EstimateMethod
    samples: int | None = None
    exact: Fraction | None = None
    degenerate: bool = False

    def within(self, target: float, sigmas: float = 3.0) -> bool:
        return abs(self.value - target) <= sigmas * self.std_error

    def summary(self) -> dict:
        return {
            "value": self.value,
            "std_error": self.std_error,
            "method": str(self.method),
            "samples": self.samples,
            "exact": None if self.exact is None else str(self.exact),
            "degenerate": self.degenerate,
        }


def _exact(value: Fraction) -> CylinderEstimate:
    return CylinderEstimate(float(value), 0.0, EstimateMethod.EXACT, exact=value)


def _step_value(graphon: StepGraphon, pattern: CylinderPattern) -> Fraction:
    live = [b for b in range(graphon.blocks) if graphon.masses[b] > 0]
    pairs = pattern.pairs()
    total = Fraction(0)
    for assignment in itertools.product(live, repeat=pattern.n):
        term = math.prod((graphon.masses[b] for b in assignment), start=Fraction(1))
        for i, j, joined in pairs:
            v = graphon.values[assignment[i]][assignment[j]]
            term *= v if joined else 1 - v
            if not term:
                break
        total += term
    return total


@traced_operation("cylinder_exact")
def cylinder_exact(
    graphon: Graphon, pattern: CylinderPattern, exact_bits: int = DEFAULT_EXACT_BITS
) -> CylinderEstimate:
    """Exact rational M(C_A) for constant and step graphons.

    Step graphons are evaluated by summing over all K^n block assignments,
    refused when n * log2(K) exceeds ``exact_bits``.

    Raises:
        UnsupportedVariantError: For indicator graphons.
        ComplexityError: If the assignment count is above the guard.
    """
    if isinstance(graphon, ConstantGraphon):
        p = graphon.p
        return _exact(p**pattern.ones * (1 - p) ** pattern.zeros)
    if isinstance(graphon, StepGraphon):
        cost = pattern.n * math.log2(graphon.blocks) if graphon.blocks > 1 else 0.0
        if cost > exact_bits:
            raise ComplexityError(
                f"{graphon.blocks}^{pattern.n} block assignments exceed 2^{exact_bits}",
                {"blocks": graphon.blocks, "n": pattern.n},
            )
        return _exact(_step_value(graphon, pattern))
    raise UnsupportedVariantError("cylinder_exact", graphon.variant)


def _integrand(graphon: Graphon, pattern: CylinderPattern, batch: VertexBatch, count: int) -> np.ndarray:
    """Integrand for ``count`` tuples; tuple t owns vertices t*n .. t*n + n - 1."""
    n = pattern.n
    values = np.ones(count)
    starts = np.arange(count, dtype=np.int64) * n
    for i, j, joined in pattern.pairs():
        omega = graphon.pairwise(batch.take(starts + i), batch.take(starts + j))
        values *= omega if joined else 1.0 - omega
    return values


def _run_shard(
    graphon: Graphon,
    measure: VertexMeasure,
    pattern: CylinderPattern,
    rng: np.random.Generator,
    samples: int,
    bits: int,
) -> tuple[int, float, float, float, float]:
    total = 0.0
    squares = 0.0
    lo, hi = math.inf, -math.inf
    for start in range(0, samples, _SAMPLE_CHUNK):
        count = min(_SAMPLE_CHUNK, samples - start)
        batch = graphon.draw(measure, rng, count * pattern.n, bits)
        values = _integrand(graphon, pattern, batch, count)
        total += float(values.sum())
        squares += float(np.square(values).sum())
        lo, hi = min(lo, float(values.min())), max(hi, float(values.max()))
    return samples, total, squares, lo, hi


@traced_operation("cylinder_mc")
def cylinder_mc(
    graphon: Graphon,
    measure: VertexMeasure,
    pattern: CylinderPattern,
    samples: int,
    seed: int,
    bits: int = 40,
    shards: int = DEFAULT_SHARDS,
    threads: int = 1,
) -> CylinderEstimate:
    """Monte Carlo M(C_A): mean of the integrand over i.i.d. vertex tuples.

    Samples are split evenly over ``shards`` substreams spawned from ``seed``
    and merged by sums, so the estimate does not depend on ``threads``.

    Raises:
        IncompatibleMeasureError: If the measure cannot drive the graphon.
    """
    if samples < 1:
        raise ValidationError(f"samples must be at least 1, got {samples}", "samples")
    graphon.check_measure(measure)
    shards = max(1, min(shards, samples))
    sizes = [samples // shards + (k < samples % shards) for k in range(shards)]
    streams = shard_streams(seed, shards)

    def run(k: int) -> tuple[int, float, float, float, float]:
        return _run_shard(graphon, measure, pattern, streams[k], sizes[k], bits)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=min(threads, shards)) as pool:
            parts = list(pool.map(run, range(shards)))
    else:
        parts = [run(k) for k in range(shards)]

    count = sum(p[0] for p in parts)
    mean = sum(p[1] for p in parts) / count
    squares = sum(p[2] for p in parts)
    # constant integrand, tested on the extremes
    degenerate = min(p[3] for p in parts) == max(p[4] for p in parts)
    if degenerate or count < 2:
        variance = 0.0
    else:
        variance = max(squares - count * mean * mean, 0.0) / (count - 1)
    std_error = math.sqrt(variance / count)
    if degenerate:
        logger.debug("Degenerate cylinder estimate %.6g over %d samples", mean, count)
    return CylinderEstimate(
        value=min(max(mean, 0.0), 1.0),
        std_error=std_error,
        method=EstimateMethod.MONTE_CARLO,
        samples=count,
        degenerate=degenerate,
    )


@dataclass
class PermutationCheck:
    """Outcome of comparing M(C_A) against M(C_{PAP^T})."""

    value: Fraction
    checked: int
    mismatches: list[tuple[int, ...]]

    @property
    def invariant(self) -> bool:
        return not self.mismatches

    def __bool__(self) -> bool:
        return self.invariant


def permutation_invariance_check(
    graphon: Graphon,
    pattern: CylinderPattern,
    permutations: int,
    seed: int,
    exact_bits: int = DEFAULT_EXACT_BITS,
) -> PermutationCheck:
    """Exact check that M(C_A) = M(C_{PAP^T}) for the identity plus random P.

    When ``permutations`` reaches n!, all of S_n is checked instead.

    Raises:
        UnsupportedVariantError: As cylinder_exact.
        ComplexityError: As cylinder_exact.
    """
    n = pattern.n
    value = cylinder_exact(graphon, pattern, exact_bits).exact
    if permutations >= math.factorial(n):
        candidates = [tuple(p) for p in itertools.permutations(range(n))]
    else:
        rng = make_generator(seed)
        candidates = [tuple(range(n))]
        candidates += [tuple(int(v) for v in rng.permutation(n)) for _ in range(permutations)]

    mismatches = [
        p for p in candidates if cylinder_exact(graphon, pattern.permuted(p), exact_bits).exact != value
    ]
    return PermutationCheck(value=value, checked=len(candidates), mismatches=mismatches)
