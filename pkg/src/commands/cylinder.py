"""cylinder: probability of a cylinder set, exact or Monte Carlo."""

from typing import Any

from src.measure.cylinder import DEFAULT_SHARDS, CylinderPattern, cylinder_exact, cylinder_mc
from src.observability import traced_command
from src.reports.renderer import render_report

from .base import BaseCommand, build_model
from .result import CommandResult
from .validation import validated_command


class CylinderCommand(BaseCommand):
    @property
    def name(self) -> str:
        return "cylinder"

    @property
    def description(self) -> str:
        return "Evaluate M(C_A) for a pattern file, exactly or by Monte Carlo"

    @traced_command()
    @validated_command
    def execute(self, **params: Any) -> CommandResult:
        pattern = CylinderPattern.from_file(params["pattern"])
        model = build_model(params, self.config)
        if params["method"] == "exact":
            estimate = cylinder_exact(model.graphon, pattern, self.config.analysis.exact_bits)
        else:
            estimate = cylinder_mc(
                model.graphon,
                model.measure,
                pattern,
                samples=params["samples"],
                seed=params["seed"],
                bits=model.bits,
                shards=params.get("shards", DEFAULT_SHARDS),
                threads=params.get("threads", 1),
            )
        data = {
            "model": model.descriptor,
            "measure": model.measure.text(),
            "pattern": pattern.summary(),
            "estimate": estimate.summary(),
        }
        return CommandResult.ok(data, output=render_report("cylinder", data, params.get("report", "text")))
