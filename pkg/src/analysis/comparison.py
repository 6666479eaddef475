"""Empirical comparison of matrix distributions.

Each side draws independent k-vertex samples and tallies their labeled
adjacency patterns (2^(k(k-1)/2) cells). Both sides use the same seed, so a
model compared with itself yields identical tallies.
"""

import itertools
import logging
from dataclasses import dataclass, field
from enum import StrEnum

import numpy as np
from scipy import stats

from src.core.exceptions import ValidationError
from src.core.rng import vertex_edge_streams
from src.observability.decorators import traced_operation
from src.sampling.model_spec import SamplingModel

logger = logging.getLogger(__name__)

MAX_K = 4
MIN_SAMPLES = 100


class Verdict(StrEnum):
    SAME = "same"
    DIFFERENT = "different"
    INCONCLUSIVE = "inconclusive"


@dataclass
class ComparisonReport:
    """Chi-square comparison of two labeled-pattern tallies."""

    k: int
    samples_per_side: int
    statistic: float
    threshold: float
    verdict: Verdict
    df: int = 0
    small_cells: int = 0
    counts_a: list[int] = field(default_factory=list)
    counts_b: list[int] = field(default_factory=list)
    model_a: str | None = None
    model_b: str | None = None
    degree_profile: dict | None = None

    def summary(self) -> dict:
        return {
            "k": self.k,
            "samples_per_side": self.samples_per_side,
            "statistic": self.statistic,
            "threshold": self.threshold,
            "df": self.df,
            "verdict": str(self.verdict),
            "small_cells": self.small_cells,
            "counts_a": self.counts_a,
            "counts_b": self.counts_b,
            "model_a": self.model_a,
            "model_b": self.model_b,
            "degree_profile": self.degree_profile,
        }


def pattern_tally(model: SamplingModel, k: int, samples: int, seed: int) -> np.ndarray:
    """Counts of labeled k-vertex patterns over ``samples`` independent draws.

    Sample t uses vertices t*k .. t*k + k - 1 of one vertex batch; edges draw
    one uniform per sample and pair, pairs in row-major order.
    """
    graphon = model.graphon
    vertex_rng, edge_rng = vertex_edge_streams(seed)
    batch = graphon.draw(model.measure, vertex_rng, samples * k, model.bits)
    starts = np.arange(samples, dtype=np.int64) * k
    codes = np.zeros(samples, dtype=np.int64)
    deterministic = graphon.is_deterministic_in_edges()
    for i, j in itertools.combinations(range(k), 2):
        omega = graphon.pairwise(batch.take(starts + i), batch.take(starts + j))
        joined = omega >= 1.0 if deterministic else edge_rng.random(samples) < omega
        codes = (codes << 1) | joined
    return np.bincount(codes, minlength=1 << (k * (k - 1) // 2))


def chi_square_distance(a: np.ndarray, b: np.ndarray) -> tuple[float, int]:
    """sum (a - b)^2 / (a + b) over cells with a + b > 0, with df = used cells - 1."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    used = (a + b) > 0
    statistic = float(np.sum((a[used] - b[used]) ** 2 / (a[used] + b[used])))
    return statistic, int(used.sum()) - 1


@traced_operation("compare_matrix_distributions")
def compare_matrix_distributions(
    a: SamplingModel,
    b: SamplingModel,
    k: int,
    samples_per_side: int,
    seed: int,
    seed_b: int | None = None,
    significance: float = 0.01,
    small_count: float = 5.0,
    small_count_fraction: float = 0.2,
) -> ComparisonReport:
    """Decide whether two models induce the same law of k x k corners.

    Side b reuses ``seed`` unless ``seed_b`` is given.

    The verdict is ``inconclusive`` when more than ``small_count_fraction`` of
    the used cells have mean count (a + b) / 2 below ``small_count``;
    otherwise ``different`` iff the statistic exceeds the chi-square quantile
    at 1 - ``significance``.
    """
    if not 2 <= k <= MAX_K:
        raise ValidationError(f"k must lie in [2, {MAX_K}], got {k}", "k")
    if samples_per_side < MIN_SAMPLES:
        raise ValidationError(
            f"samples_per_side must be at least {MIN_SAMPLES}, got {samples_per_side}", "samples"
        )

    counts_a = pattern_tally(a, k, samples_per_side, seed)
    counts_b = pattern_tally(b, k, samples_per_side, seed if seed_b is None else seed_b)
    statistic, df = chi_square_distance(counts_a, counts_b)
    used = (counts_a + counts_b) > 0
    small = int(((counts_a + counts_b)[used] / 2 < small_count).sum())

    if df < 1:
        # a single populated cell holds every sample on both sides
        threshold = 0.0
        verdict = Verdict.SAME
    else:
        threshold = float(stats.chi2.ppf(1.0 - significance, df))
        if small > small_count_fraction * int(used.sum()):
            verdict = Verdict.INCONCLUSIVE
        elif statistic > threshold:
            verdict = Verdict.DIFFERENT
        else:
            verdict = Verdict.SAME

    logger.debug("Comparison k=%d: statistic %.4f vs %.4f (df=%d)", k, statistic, threshold, df)
    return ComparisonReport(
        k=k,
        samples_per_side=samples_per_side,
        statistic=statistic,
        threshold=threshold,
        verdict=verdict,
        df=df,
        small_cells=small,
        counts_a=[int(c) for c in counts_a],
        counts_b=[int(c) for c in counts_b],
        model_a=a.descriptor,
        model_b=b.descriptor,
    )
