"""Custom exception hierarchy for universal-graph constructions and analysis.

Provides typed exceptions for better error handling and classification.
"""


class GraphError(Exception):
    """Base exception for all universal-graph errors.

    All custom exceptions inherit from this, allowing:
        try:
            ...
        except GraphError as e:
            # Handle any library-specific error
    """

    def __init__(self, message: str, details: dict | None = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}


class EmptySetError(GraphError):
    """Extremum requested on an empty interval set."""

    def __init__(self, operation: str, details: dict | None = None):
        super().__init__(f"Cannot take {operation} of an empty interval set", details)
        self.operation = operation


class IntervalParseError(GraphError):
    """Malformed textual interval or interval set."""

    def __init__(self, text: str, reason: str, details: dict | None = None):
        super().__init__(f"Cannot parse interval text '{text}': {reason}", details)
        self.text = text
        self.reason = reason


class InfeasibleCoverError(GraphError):
    """No admissible pattern covers the given point sets at the search resolution.

    Attributes:
        mode: Pattern filter mode that was searched
        halvings: Number of cover shrinks attempted
    """

    def __init__(
        self,
        message: str,
        mode: str = "plain",
        halvings: int = 0,
        details: dict | None = None,
    ):
        super().__init__(f"Infeasible cover ({mode}): {message}", details)
        self.mode = mode
        self.halvings = halvings


class StepLimitError(GraphError):
    """Lazy construction would need more steps than the configured maximum."""

    def __init__(self, requested: int, limit: int, details: dict | None = None):
        super().__init__(
            f"Construction needs {requested} steps, above the configured limit of {limit}",
            details,
        )
        self.requested = requested
        self.limit = limit


class ConstructionError(GraphError):
    """A construction step could not satisfy its conditions.

    The constructions guarantee feasibility, so this always indicates a defect.
    """

    def __init__(self, message: str, step: int | None = None, details: dict | None = None):
        prefix = f"Construction step {step} failed" if step is not None else "Construction failed"
        super().__init__(f"{prefix}: {message}", details)
        self.step = step


class LoopError(GraphError):
    """Adjacency queried for a vertex with itself."""

    def __init__(self, vertex: object, details: dict | None = None):
        super().__init__(f"Loops are excluded: adjacency of {vertex} with itself", details)
        self.vertex = vertex


class PreconditionError(GraphError):
    """Inputs violate an operation precondition (e.g. adjacent white points)."""

    def __init__(self, message: str, details: dict | None = None):
        super().__init__(f"Precondition violated: {message}", details)


class IncompatibleMeasureError(GraphError):
    """Vertex measure cannot be combined with the graphon variant."""

    def __init__(self, graphon: str, measure: str, details: dict | None = None):
        super().__init__(f"Measure {measure} is not compatible with graphon {graphon}", details)
        self.graphon = graphon
        self.measure = measure


class UnsupportedVariantError(GraphError):
    """Operation is not available for this graphon variant."""

    def __init__(self, operation: str, variant: str, details: dict | None = None):
        super().__init__(f"{operation} is not supported for {variant} graphons", details)
        self.operation = operation
        self.variant = variant


class ComplexityError(GraphError):
    """Exact evaluation would exceed the configured enumeration guard."""

    def __init__(self, message: str, details: dict | None = None):
        super().__init__(f"Exact evaluation refused: {message}", details)


class AdmissibleTupleExhaustedError(GraphError):
    """Resampling failed to produce an admissible (white, black) tuple."""

    def __init__(self, attempts: int, mode: str, details: dict | None = None):
        super().__init__(
            f"No admissible tuple for mode {mode} after {attempts} resampling attempts", details
        )
        self.attempts = attempts
        self.mode = mode


class ConfigError(GraphError):
    """Error in configuration.

    Raised when configuration is invalid or missing.

    Attributes:
        config_key: The configuration key that caused the error
    """

    def __init__(
        self,
        message: str,
        config_key: str | None = None,
        details: dict | None = None,
    ):
        super().__init__(f"Configuration error: {message}", details)
        self.config_key = config_key


class ValidationError(GraphError):
    """Error in data validation.

    Raised when an input file or model spec fails validation.

    Attributes:
        field: The field that failed validation
    """

    def __init__(
        self,
        message: str,
        field: str | None = None,
        details: dict | None = None,
    ):
        super().__init__(f"Validation error: {message}", details)
        self.field = field
