"""dump: print the state of an exact construction."""

from typing import Any

from src.construction.ksfree_graph import PlaneGraphModel
from src.construction.line_graph import LineGraphModel
from src.observability import traced_command
from src.sampling.model_spec import ModelKind, ModelSpec

from .base import BaseCommand, model_spec_from_params
from .result import CommandResult
from .validation import validated_command


class DumpCommand(BaseCommand):
    @property
    def name(self) -> str:
        return "dump"

    @property
    def description(self) -> str:
        return "Print the construction state after a number of steps"

    @traced_command()
    @validated_command
    def execute(self, **params: Any) -> CommandResult:
        spec: ModelSpec = model_spec_from_params(params)
        construction = self.config.construction
        if spec.kind is ModelKind.KSFREE:
            model: LineGraphModel | PlaneGraphModel = PlaneGraphModel(spec.s, construction)
        elif spec.kind is ModelKind.LINE_TRIANGLEFREE:
            model = LineGraphModel("triangle_free", construction)
        else:
            model = LineGraphModel("plain", construction)

        for _ in range(params["steps"]):
            model.step()
        lines = model.dump()
        return CommandResult.ok(model.summary(), output="\n".join(lines) + "\n")
