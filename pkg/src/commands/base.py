"""Base command abstraction for CLI subcommands."""

import logging
from abc import ABC, abstractmethod
from typing import Any

from src.contracts.schema_parser import COMMAND_SCHEMAS_PATH, generate_fields_text, load_schema
from src.core.config import AppConfig
from src.core.exceptions import GraphError
from src.sampling.model_spec import ModelSpec, SamplingModel
from src.sampling.measures import VertexMeasure

from .result import EXIT_ERROR, CommandResult

logger = logging.getLogger(__name__)


class BaseCommand(ABC):
    """Abstract base class for all commands.

    Subclasses must implement:
        - name: Subcommand name
        - description: One-line help text
        - execute(): Command logic, returning a CommandResult

    Schema is loaded from src/contracts/schemas/commands/{name}.schema.json
    """

    def __init__(self, config: AppConfig | None = None):
        self.config = config or AppConfig()

    @property
    @abstractmethod
    def name(self) -> str:
        pass

    @property
    @abstractmethod
    def description(self) -> str:
        pass

    @abstractmethod
    def execute(self, **params: Any) -> CommandResult:
        pass

    def get_parameters_schema(self) -> dict[str, Any]:
        return load_schema(COMMAND_SCHEMAS_PATH / f"{self.name}.schema.json")

    def fields_help(self) -> str:
        return generate_fields_text(self.get_parameters_schema())

    def run(self, **params: Any) -> CommandResult:
        """Execute, turning library errors into a failed result."""
        try:
            return self.execute(**params)
        except GraphError as e:
            logger.debug("Command %s failed: %s", self.name, e.message)
            return CommandResult.fail(e.message, type(e).__name__, EXIT_ERROR)
        except ValueError as e:
            # seed and enum coercions raise plain ValueError
            return CommandResult.fail(str(e), "ValueError", EXIT_ERROR)


def model_spec_from_params(params: dict[str, Any]) -> ModelSpec:
    """ModelSpec from ``model`` plus the flag-style ``p`` / ``s`` / ``step`` / ``measure``."""
    model = params["model"]
    claim = params.get("claim_ksfree")
    if ":" in model or "@" in model:
        spec = ModelSpec.parse(model, claim_ks_free=claim)
        if params.get("measure"):
            spec = ModelSpec.from_fields(
                spec.kind, _spec_arg(spec), VertexMeasure.parse(params["measure"]), claim
            )
        return spec
    arg = params.get("p") or params.get("s") or params.get("step")
    measure = VertexMeasure.parse(params["measure"]) if params.get("measure") else None
    return ModelSpec.from_fields(model, arg, measure, claim)


def _spec_arg(spec: ModelSpec) -> str | int | None:
    if spec.p is not None:
        return str(spec.p)
    if spec.s is not None:
        return spec.s
    return spec.path


def build_model(params: dict[str, Any], config: AppConfig) -> SamplingModel:
    return model_spec_from_params(params).build(config)
