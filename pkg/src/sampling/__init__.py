"""Vertex measures, graphons and sampled graphs."""

from .graph_io import GraphFormat, load_graph, read_edgelist, write_edgelist, write_graph
from .graphon import (
    ConstantGraphon,
    Graphon,
    LineIndicatorGraphon,
    PlaneIndicatorGraphon,
    StepGraphon,
    UniversalityReport,
    VertexBatch,
    check_generalized_universality,
    is_deterministic_in_edges,
    omega,
    sample,
    step_graphon_clique,
    verify_ks_free_claim,
)
from .measures import MeasureKind, VertexMeasure
from .model_spec import ModelKind, ModelSpec, SamplingModel
from .sampled_graph import SampledGraph

__all__ = [
    "ConstantGraphon",
    "GraphFormat",
    "Graphon",
    "LineIndicatorGraphon",
    "MeasureKind",
    "ModelKind",
    "ModelSpec",
    "PlaneIndicatorGraphon",
    "SampledGraph",
    "SamplingModel",
    "StepGraphon",
    "UniversalityReport",
    "VertexBatch",
    "VertexMeasure",
    "check_generalized_universality",
    "is_deterministic_in_edges",
    "load_graph",
    "omega",
    "read_edgelist",
    "sample",
    "step_graphon_clique",
    "verify_ks_free_claim",
    "write_edgelist",
    "write_graph",
]
