"""Continuous universal graphs: exact constructions, graphon sampling and verification."""

from .construction.intervals import IntervalSet, RationalInterval
from .construction.ksfree_graph import PlaneGraphModel
from .construction.line_graph import LineGraphModel
from .core.config import AppConfig
from .core.exceptions import GraphError
from .sampling.model_spec import ModelSpec, SamplingModel
from .sampling.sampled_graph import SampledGraph

__all__ = [
    "AppConfig",
    "GraphError",
    "IntervalSet",
    "LineGraphModel",
    "ModelSpec",
    "PlaneGraphModel",
    "RationalInterval",
    "SampledGraph",
    "SamplingModel",
]
