"""Normalized degree profiles.

For a measurable graph the law of x -> m(E_x) is an isomorphism invariant; in
a sample it is approximated by the normalized degrees deg(v) / (n - 1).
"""

from dataclasses import dataclass

import numpy as np
from scipy import stats

from src.core.exceptions import ValidationError
from src.sampling.sampled_graph import SampledGraph

QUANTILES = (0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0)


def normalized_degrees(graph: SampledGraph) -> np.ndarray:
    if graph.n < 2:
        raise ValidationError(f"degree profile needs at least 2 vertices, got {graph.n}", "n")
    return graph.degrees() / (graph.n - 1)


def degree_profile(graph: SampledGraph) -> dict:
    degrees = normalized_degrees(graph)
    return {
        "n": graph.n,
        "mean": float(degrees.mean()),
        "quantiles": {str(q): float(v) for q, v in zip(QUANTILES, np.quantile(degrees, QUANTILES), strict=True)},
    }


@dataclass
class DegreeProfileComparison:
    statistic: float
    p_value: float
    significance: float

    @property
    def different(self) -> bool:
        return self.p_value < self.significance

    def summary(self) -> dict:
        return {
            "statistic": self.statistic,
            "p_value": self.p_value,
            "significance": self.significance,
            "different": self.different,
        }


def compare_degree_profiles(
    a: SampledGraph, b: SampledGraph, significance: float = 0.01
) -> DegreeProfileComparison:
    """Two-sample Kolmogorov-Smirnov test on normalized degrees."""
    result = stats.ks_2samp(normalized_degrees(a), normalized_degrees(b))
    return DegreeProfileComparison(float(result.statistic), float(result.pvalue), significance)
