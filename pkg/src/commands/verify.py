"""verify: run analysis checks on a graph file.

Checks:
    clique:K                 hard; passes iff the graph has no K-clique
    census:K[:MODE]          hard; passes iff every class allowed by MODE appears
                             and none outside it does
    extension:W:B[:MODE]     reported only
    purity                   reported only
    degrees                  reported only
"""

from dataclasses import dataclass, field
from typing import Any

from src.analysis.census import induced_census
from src.analysis.cliques import find_clique
from src.analysis.degree_profile import degree_profile
from src.analysis.extension import extension_stats
from src.analysis.purity import duplicate_neighbourhoods
from src.construction.patterns import PatternFilter
from src.core.exceptions import ValidationError
from src.observability import emit_info, get_or_create_context, traced_command
from src.reports.renderer import render_report
from src.sampling.graph_io import load_graph
from src.sampling.sampled_graph import SampledGraph

from .base import BaseCommand
from .result import EXIT_DIFFERENT, CommandResult
from .validation import validated_command

DEFAULT_TUPLES = 500


@dataclass
class CheckOutcome:
    check: str
    kind: str
    hard: bool
    passed: bool
    detail: dict = field(default_factory=dict)

    def summary(self) -> dict:
        return {
            "check": self.check,
            "kind": self.kind,
            "hard": self.hard,
            "passed": self.passed,
            "detail": self.detail,
        }


def _mode(text: str | None) -> PatternFilter:
    return PatternFilter.parse(text) if text else PatternFilter.plain()


class VerifyCommand(BaseCommand):
    """Exit 0 iff every hard check passes, 2 if one fails, 1 on input errors."""

    @property
    def name(self) -> str:
        return "verify"

    @property
    def description(self) -> str:
        return "Run clique, census, extension, purity and degree checks on a graph file"

    @traced_command()
    @validated_command
    def execute(self, **params: Any) -> CommandResult:
        graph = load_graph(params["input"], params.get("input_format"))
        seed = params.get("seed", graph.seed)
        outcomes = [self._run_check(graph, check, seed, params) for check in params["checks"]]
        passed = all(o.passed for o in outcomes if o.hard)

        data = {
            "input": params["input"],
            "graph": graph.summary(),
            "passed": passed,
            "checks": [o.summary() for o in outcomes],
        }
        output = render_report("verify", data, params.get("report", "text"))
        if not passed:
            failed = [o.check for o in outcomes if o.hard and not o.passed]
            return CommandResult.fail(
                f"hard checks failed: {', '.join(failed)}",
                "check_failed",
                EXIT_DIFFERENT,
                data=data,
                output=output,
            )
        return CommandResult.ok(data, output=output)

    def _run_check(
        self, graph: SampledGraph, check: str, seed: int | None, params: dict
    ) -> CheckOutcome:
        name, _, rest = check.partition(":")
        analysis = self.config.analysis

        if name == "clique":
            k = int(rest)
            clique = find_clique(graph, k)
            detail: dict[str, Any] = {"k": k, "found": clique}
            if clique is not None and (graph.coords is not None or graph.blocks is not None):
                detail["coords"] = [graph.coordinate_text(v) for v in clique]
            outcome = CheckOutcome(check, "clique", True, clique is None, detail)

        elif name == "census":
            k_text, _, mode_text = rest.partition(":")
            report = induced_census(
                graph, int(k_text), _mode(mode_text), seed=seed, cutoff=analysis.census_cutoff
            )
            outcome = CheckOutcome(
                check, "census", True, report.complete and not report.unexpected, report.summary()
            )

        elif name == "extension":
            if seed is None:
                raise ValidationError("extension checks need --seed", "seed")
            white, black, *mode_parts = rest.split(":", 2)
            report = extension_stats(
                graph,
                int(white),
                int(black),
                params.get("tuples", DEFAULT_TUPLES),
                seed,
                _mode(":".join(mode_parts) or None),
                resample_limit=analysis.resample_limit,
                failure_cap=analysis.failure_cap,
            )
            outcome = CheckOutcome(check, "extension", False, True, report.summary())

        elif name == "purity":
            outcome = CheckOutcome(check, "purity", False, True, duplicate_neighbourhoods(graph).summary())

        else:
            outcome = CheckOutcome(check, "degrees", False, True, degree_profile(graph))

        emit_info(
            "command.check",
            get_or_create_context("verify"),
            {"check": check, "hard": outcome.hard, "passed": outcome.passed},
        )
        return outcome
