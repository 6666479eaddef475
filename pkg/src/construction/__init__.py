"""Exact constructions: interval sets, pattern enumeration, line and plane graphs."""

from .intervals import IntervalSet, Rational, RationalInterval, to_fraction
from .ksfree_graph import BASE_BOXES, Box, BoxSet, PlaneGraphModel, PlaneStep, white_clique_check
from .layout import LevelWindow, StepLayout
from .line_graph import LineGraphModel, LineStep
from .patterns import (
    FilterMode,
    Pattern,
    PatternEnumerator,
    PatternFilter,
    enumerate_pattern,
    locate,
)

__all__ = [
    "BASE_BOXES",
    "Box",
    "BoxSet",
    "FilterMode",
    "IntervalSet",
    "LevelWindow",
    "LineGraphModel",
    "LineStep",
    "Pattern",
    "PatternEnumerator",
    "PatternFilter",
    "PlaneGraphModel",
    "PlaneStep",
    "Rational",
    "RationalInterval",
    "StepLayout",
    "enumerate_pattern",
    "locate",
    "to_fraction",
    "white_clique_check",
]
