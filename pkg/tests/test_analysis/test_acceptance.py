"""End-to-end statistical checks at full sample sizes."""

import pytest

from src.analysis.census import induced_census
from src.analysis.cliques import find_clique
from src.analysis.comparison import Verdict, compare_matrix_distributions
from src.analysis.extension import extension_stats
from src.construction.patterns import PatternFilter
from src.sampling.model_spec import ModelSpec
from tests.conftest import SLOW_SEEDS

TRIANGLE_FREE = PatternFilter.triangle_free()

# sampling noise once the fractions saturate near 1
SATURATION_SLACK = 0.005


def model(text: str):
    return ModelSpec.parse(text).build()


@pytest.mark.slow
class TestCliqueFreeness:
    """Exact clique checks over 50 seeds."""

    def test_line_trianglefree_has_no_triangle(self):
        """Test 50 samples of 300 vertices."""
        line = model("line-trianglefree")
        for seed in SLOW_SEEDS:
            assert find_clique(line.sample(300, seed), 3) is None, f"triangle at seed {seed}"

    def test_ksfree_four_has_no_k4(self):
        """Test 50 samples of 200 vertices."""
        plane = model("ksfree:4")
        for seed in SLOW_SEEDS:
            assert find_clique(plane.sample(200, seed), 4) is None, f"K_4 at seed {seed}"

    @pytest.mark.parametrize("text", ["line-trianglefree", "ksfree:4", "ksfree:5"])
    def test_clique_bounded_models_are_deterministic(self, text):
        """Test every model carrying a clique bound is deterministic in edges."""
        built = model(text)
        assert built.clique_bound is not None
        assert built.deterministic


@pytest.mark.slow
class TestErdosRenyiAxioms:
    """ER(1/2) at n = 2000."""

    @pytest.fixture(scope="class")
    def graph(self):
        return model("er:1/2").sample(2000, seed=2000)

    def test_all_four_vertex_classes(self, graph):
        """Test every graph on 4 vertices appears induced."""
        report = induced_census(graph, 4, seed=1)
        assert report.sampled
        assert report.complete
        assert len(report.classes_found) == 11

    def test_two_by_two_extension(self, graph):
        """Test 2 whites and 2 blacks are almost always extended."""
        report = extension_stats(graph, 2, 2, tuples=500, seed=2)
        assert report.fraction >= 0.999


@pytest.mark.slow
class TestTriangleFreeCensus:
    """Census of the triangle-free line model."""

    def test_three_vertex_classes(self):
        """Test a 5000-vertex sample holds exactly the triangle-free triples."""
        graph = model("line-trianglefree@gaussian:0:5").sample(5000, seed=5000)
        report = induced_census(graph, 3, TRIANGLE_FREE, seed=1)
        assert report.classes_found == report.classes_expected
        assert report.unexpected == set()

    def test_four_vertex_classes_grow_with_n(self):
        """Test mean class count over 10 seeds does not fall as n grows."""
        line = model("line-trianglefree@gaussian:0:5")
        means = []
        for n in (1000, 2500, 5000):
            found = [len(induced_census(line.sample(n, seed), 4, TRIANGLE_FREE, seed=seed).classes_found)
                     for seed in range(1, 11)]
            means.append(sum(found) / len(found))
        assert means == sorted(means)
        assert means[-1] <= 7


@pytest.mark.slow
class TestLineExtension:
    """Extension fractions of the line models as n grows."""

    @pytest.mark.parametrize(
        "text, mode",
        [("line-universal", PatternFilter.plain()), ("line-trianglefree", TRIANGLE_FREE)],
    )
    @pytest.mark.parametrize("white, black", [(1, 1), (2, 1)])
    def test_fraction_grows_with_n(self, text, mode, white, black):
        """Test the satisfied fraction averaged over 20 seeds for n in 200, 1000, 5000."""
        line = model(text)
        means = []
        for n in (200, 1000, 5000):
            fractions = [
                extension_stats(line.sample(n, seed), white, black, tuples=200, seed=seed, mode=mode).fraction
                for seed in range(1, 21)
            ]
            means.append(sum(fractions) / len(fractions))
        for smaller, larger in zip(means, means[1:]):
            assert larger >= smaller - SATURATION_SLACK


@pytest.mark.slow
class TestDistributionDiscrimination:
    """Repeated two-sample comparisons with k = 2 and 10^4 samples per side."""

    def test_same_model(self):
        """Test ER(0.3) against itself is 'same' in at least 98 of 100 runs."""
        a, b = model("er:3/10"), model("er:3/10")
        same = sum(
            compare_matrix_distributions(a, b, 2, 10_000, seed=seed, seed_b=seed + 1000).verdict is Verdict.SAME
            for seed in range(100)
        )
        assert same >= 98

    def test_different_models(self):
        """Test ER(0.3) against ER(0.5) is 'different' in all 100 runs."""
        a, b = model("er:3/10"), model("er:1/2")
        for seed in range(100):
            assert compare_matrix_distributions(a, b, 2, 10_000, seed=seed).verdict is Verdict.DIFFERENT
