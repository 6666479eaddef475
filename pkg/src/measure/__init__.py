"""Cylinder-set measures of sampled adjacency matrices."""

from .cylinder import (
    CylinderEstimate,
    CylinderPattern,
    EstimateMethod,
    PermutationCheck,
    cylinder_exact,
    cylinder_mc,
    permutation_invariance_check,
)

__all__ = [
    "CylinderEstimate",
    "CylinderPattern",
    "EstimateMethod",
    "PermutationCheck",
    "cylinder_exact",
    "cylinder_mc",
    "permutation_invariance_check",
]
