"""Induced-subgraph census on k <= 5 vertices.

A k-vertex graph is encoded as a bitstring over the pairs
(0,1), (0,2), ..., (k-2,k-1) with the first pair as the most significant bit.
Its canonical code is the smallest such integer over all k! relabelings.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from src.construction.patterns import PatternFilter
from src.core.exceptions import ValidationError
from src.core.rng import make_generator
from src.observability.decorators import traced_operation
from src.sampling.sampled_graph import SampledGraph

logger = logging.getLogger(__name__)

MAX_K = 5
_CHUNK = 1 << 16


def pair_order(k: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(k), 2))


def code_of(adjacency: np.ndarray) -> int:
    """Labeled code of a k x k adjacency matrix."""
    k = adjacency.shape[0]
    code = 0
    for a, b in pair_order(k):
        code = (code << 1) | int(bool(adjacency[a, b]))
    return code


def edges_of(code: int, k: int) -> list[tuple[int, int]]:
    pairs = pair_order(k)
    width = len(pairs)
    return [pair for p, pair in enumerate(pairs) if code >> (width - 1 - p) & 1]


def _matrix(code: int, k: int) -> np.ndarray:
    adjacency = np.zeros((k, k), dtype=bool)
    for a, b in edges_of(code, k):
        adjacency[a, b] = adjacency[b, a] = True
    return adjacency


@lru_cache(maxsize=None)
def canonical_table(k: int) -> np.ndarray:
    """canonical_table(k)[code] is the canonical code of labeled code ``code``."""
    if not 1 <= k <= MAX_K:
        raise ValidationError(f"census order must lie in [1, {MAX_K}], got {k}", "k")
    width = k * (k - 1) // 2
    table = np.empty(1 << width, dtype=np.int64)
    perms = [np.asarray(p) for p in itertools.permutations(range(k))]
    for code in range(1 << width):
        adjacency = _matrix(code, k)
        table[code] = min(code_of(adjacency[np.ix_(p, p)]) for p in perms)
    table.flags.writeable = False
    return table


def canonical_code(adjacency: np.ndarray) -> int:
    adjacency = np.asarray(adjacency, dtype=bool)
    return int(canonical_table(adjacency.shape[0])[code_of(adjacency)])


def _has_clique(code: int, k: int, size: int) -> bool:
    adjacency = _matrix(code, k)
    return any(
        all(adjacency[a, b] for a, b in itertools.combinations(subset, 2))
        for subset in itertools.combinations(range(k), size)
    )


@lru_cache(maxsize=None)
def expected_classes(k: int, mode: PatternFilter) -> frozenset[int]:
    """Canonical codes of every k-vertex graph allowed by ``mode``."""
    classes = {int(c) for c in np.unique(canonical_table(k))}
    bound = mode.clique_bound
    if bound is None or bound > k:
        return frozenset(classes)
    return frozenset(c for c in classes if not _has_clique(c, k, bound))


@dataclass
class CensusReport:
    """Isomorphism classes of induced k-vertex subgraphs seen in a graph."""

    k: int
    mode: str
    classes_found: set[int]
    classes_expected: set[int]
    subsets_examined: int = 0
    sampled: bool = False
    counts: dict[int, int] = field(default_factory=dict)

    @property
    def missing(self) -> set[int]:
        return self.classes_expected - self.classes_found

    @property
    def unexpected(self) -> set[int]:
        return self.classes_found - self.classes_expected

    @property
    def complete(self) -> bool:
        return not self.missing

    def summary(self) -> dict:
        return {
            "k": self.k,
            "mode": self.mode,
            "classes_found": sorted(self.classes_found),
            "classes_expected": sorted(self.classes_expected),
            "missing": [edges_of(c, self.k) for c in sorted(self.missing)],
            "unexpected": [edges_of(c, self.k) for c in sorted(self.unexpected)],
            "subsets_examined": self.subsets_examined,
            "sampled": self.sampled,
            "counts": {str(c): n for c, n in sorted(self.counts.items())},
        }


def _exhaustive_subsets(n: int, k: int):
    combos = itertools.combinations(range(n), k)
    while True:
        chunk = list(itertools.islice(combos, _CHUNK))
        if not chunk:
            return
        yield np.array(chunk, dtype=np.int64)


def _random_subsets(n: int, k: int, total: int, rng: np.random.Generator):
    """``total`` uniform k-subsets, drawn as rows of distinct indices."""
    remaining = total
    while remaining:
        count = min(_CHUNK, remaining)
        rows = rng.integers(0, n, size=(count, k))
        ordered = np.sort(rows, axis=1)
        distinct = (np.diff(ordered, axis=1) > 0).all(axis=1)
        rows = rows[distinct]
        remaining -= len(rows)
        if len(rows):
            yield rows


def _codes(adjacency: np.ndarray, subsets: np.ndarray, k: int) -> np.ndarray:
    codes = np.zeros(len(subsets), dtype=np.int64)
    for a, b in pair_order(k):
        codes = (codes << 1) | adjacency[subsets[:, a], subsets[:, b]]
    return codes


@traced_operation("induced_census")
def induced_census(
    graph: SampledGraph,
    k: int,
    mode: PatternFilter | None = None,
    seed: int | None = None,
    cutoff: int = 1_000_000,
) -> CensusReport:
    """Classify induced k-vertex subgraphs up to isomorphism.

    All C(n, k) subsets are examined when there are at most ``cutoff`` of
    them; otherwise ``cutoff`` uniform random subsets drawn with ``seed``.

    Raises:
        ValidationError: If k is out of range, or sampling is needed without a seed.
    """
    mode = mode or PatternFilter.plain()
    table = canonical_table(k)
    total = math.comb(graph.n, k)
    sampled = total > cutoff
    if sampled:
        if seed is None:
            raise ValidationError(f"census of {total} subsets needs a seed for sampling", "seed")
        batches = _random_subsets(graph.n, k, cutoff, make_generator(seed))
    else:
        batches = _exhaustive_subsets(graph.n, k)

    tally = np.zeros(len(table), dtype=np.int64)
    adjacency = graph.adjacency.astype(np.int64)
    examined = 0
    for subsets in batches:
        codes = table[_codes(adjacency, subsets, k)]
        tally += np.bincount(codes, minlength=len(table))
        examined += len(subsets)

    counts = {int(c): int(tally[c]) for c in np.flatnonzero(tally)}
    report = CensusReport(
        k=k,
        mode=mode.text(),
        classes_found=set(counts),
        classes_expected=set(expected_classes(k, mode)),
        subsets_examined=examined,
        sampled=sampled,
        counts=counts,
    )
    logger.debug("Census k=%d on n=%d: %d classes from %d subsets", k, graph.n, len(counts), examined)
    return report
