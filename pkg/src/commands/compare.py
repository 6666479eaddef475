"""compare: empirical matrix-distribution comparison of two models."""

from typing import Any

from src.analysis.comparison import Verdict, compare_matrix_distributions
from src.analysis.degree_profile import compare_degree_profiles, degree_profile
from src.core.rng import make_generator
from src.observability import traced_command
from src.reports.renderer import render_report
from src.sampling.model_spec import ModelSpec

from .base import BaseCommand
from .result import EXIT_DIFFERENT, EXIT_INCONCLUSIVE, EXIT_OK, CommandResult
from .validation import validated_command

VERDICT_EXIT = {
    Verdict.SAME: EXIT_OK,
    Verdict.DIFFERENT: EXIT_DIFFERENT,
    Verdict.INCONCLUSIVE: EXIT_INCONCLUSIVE,
}

DEFAULT_DEGREE_N = 500


class CompareCommand(BaseCommand):
    """Exit 0 for ``same``, 2 for ``different``, 3 for ``inconclusive``."""

    @property
    def name(self) -> str:
        return "compare"

    @property
    def description(self) -> str:
        return "Compare the k x k corner distributions of two models"

    @traced_command()
    @validated_command
    def execute(self, **params: Any) -> CommandResult:
        a = ModelSpec.parse(params["a"]).build(self.config)
        b = ModelSpec.parse(params["b"]).build(self.config)
        analysis = self.config.analysis
        report = compare_matrix_distributions(
            a,
            b,
            k=params["k"],
            samples_per_side=params["samples"],
            seed=params["seed"],
            seed_b=params.get("seed_b"),
            significance=analysis.significance,
            small_count=analysis.small_count,
            small_count_fraction=analysis.small_count_fraction,
        )

        if params.get("degree_profile"):
            n = params.get("degree_n", DEFAULT_DEGREE_N)
            # derived seed, shared by both sides
            seed = int(make_generator(params["seed"]).integers(0, 2**63))
            graph_a, graph_b = a.sample(n, seed), b.sample(n, seed)
            test = compare_degree_profiles(graph_a, graph_b, analysis.significance)
            report.degree_profile = {
                "n": n,
                "a": degree_profile(graph_a),
                "b": degree_profile(graph_b),
                **test.summary(),
            }

        data = report.summary()
        output = render_report("comparison", data, params.get("report", "text"))
        return CommandResult.ok(data, output=output, exit_code=VERDICT_EXIT[report.verdict])
