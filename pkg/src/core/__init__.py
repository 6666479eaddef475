"""Core utilities: configuration, exceptions, random streams."""

from .config import AnalysisConfig, AppConfig, ConstructionConfig, SamplingConfig
from .exceptions import (
    AdmissibleTupleExhaustedError,
    ComplexityError,
    ConfigError,
    ConstructionError,
    EmptySetError,
    GraphError,
    IncompatibleMeasureError,
    InfeasibleCoverError,
    IntervalParseError,
    LoopError,
    PreconditionError,
    StepLimitError,
    UnsupportedVariantError,
    ValidationError,
)

__all__ = [
    "AdmissibleTupleExhaustedError",
    "AnalysisConfig",
    "AppConfig",
    "ComplexityError",
    "ConfigError",
    "ConstructionConfig",
    "ConstructionError",
    "EmptySetError",
    "GraphError",
    "IncompatibleMeasureError",
    "InfeasibleCoverError",
    "IntervalParseError",
    "LoopError",
    "PreconditionError",
    "SamplingConfig",
    "StepLimitError",
    "UnsupportedVariantError",
    "ValidationError",
]
