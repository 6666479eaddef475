"""Tests for model specifications."""

import json
from fractions import Fraction

import pytest

from src.core.exceptions import IncompatibleMeasureError, ValidationError
from src.sampling.graphon import ConstantGraphon, LineIndicatorGraphon, PlaneIndicatorGraphon, StepGraphon
from src.sampling.model_spec import ModelKind, ModelSpec


@pytest.fixture
def random_step_file(tmp_path):
    """Step graphon with a 1/2 entry, falsely labelled K_4-free."""
    path = tmp_path / "random.json"
    path.write_text(
        json.dumps({"masses": ["1/2", "1/2"], "values": [["1/2", 1], [1, 0]], "ks_free": 4}),
        encoding="utf-8",
    )
    return path


class TestParse:
    """Tests for the compact model forms."""

    def test_er(self):
        """Test er:p with fraction and decimal text."""
        assert ModelSpec.parse("er:3/10").p == Fraction(3, 10)
        assert ModelSpec.parse("er:0.3").p == Fraction(3, 10)

    def test_ksfree(self):
        """Test ksfree:s."""
        spec = ModelSpec.parse("ksfree:4")
        assert spec.kind is ModelKind.KSFREE
        assert spec.s == 4

    def test_line_with_measure(self):
        """Test a measure after @."""
        spec = ModelSpec.parse("line-universal@uniform:-10:10")
        assert spec.kind is ModelKind.LINE_UNIVERSAL
        assert spec.measure.text() == "uniform:-10:10"

    def test_underscore_spelling(self):
        """Test line_trianglefree is accepted."""
        assert ModelSpec.parse("line_trianglefree").kind is ModelKind.LINE_TRIANGLEFREE

    def test_text(self):
        """Test the compact text of parsed specs."""
        assert ModelSpec.parse("er:3/10").text() == "er:3/10"
        assert ModelSpec.parse("ksfree:5@gaussian:0:1").text() == "ksfree:5@gaussian:0:1"
        assert ModelSpec.parse("line-trianglefree").text() == "line-trianglefree"

    @pytest.mark.parametrize(
        "text", ["bogus", "er", "er:2", "ksfree:3", "ksfree:x", "line-universal:3", "step", "er:1/2@poisson:1"]
    )
    def test_invalid(self, text):
        """Test malformed specs."""
        with pytest.raises(ValidationError):
            ModelSpec.parse(text)

    def test_from_fields(self):
        """Test CLI-style construction."""
        assert ModelSpec.from_fields("ksfree", 6).s == 6
        assert ModelSpec.from_fields(ModelKind.ER, "1/4").p == Fraction(1, 4)


class TestBuild:
    """Tests for building sampling models."""

    def test_er_defaults(self):
        """Test er gets the default Gaussian measure and no clique bound."""
        model = ModelSpec.parse("er:1/2").build()
        assert isinstance(model.graphon, ConstantGraphon)
        assert model.measure.text() == "gaussian:0:5"
        assert model.clique_bound is None
        assert not model.deterministic

    def test_line_models(self):
        """Test line indicators and their clique bounds."""
        universal = ModelSpec.parse("line-universal").build()
        triangle_free = ModelSpec.parse("line-trianglefree").build()
        assert isinstance(universal.graphon, LineIndicatorGraphon)
        assert universal.clique_bound is None
        assert triangle_free.clique_bound == 3
        assert triangle_free.deterministic

    def test_ksfree_model(self):
        """Test the plane indicator."""
        model = ModelSpec.parse("ksfree:4").build()
        assert isinstance(model.graphon, PlaneIndicatorGraphon)
        assert model.clique_bound == 4

    def test_step_model(self, step_file):
        """Test a step file gets its block measure."""
        model = ModelSpec.from_fields("step", str(step_file)).build()
        assert isinstance(model.graphon, StepGraphon)
        assert model.measure.text() == "blocks:1/2,1/2"

    def test_step_with_gaussian_refused(self, step_file):
        """Test a step graphon cannot be driven by a Gaussian."""
        with pytest.raises(IncompatibleMeasureError):
            ModelSpec.parse(f"step:{step_file}@gaussian:0:1").build()

    def test_labelled_random_step_refused(self, random_step_file):
        """Test a file claiming K_4-freeness with a 1/2 entry is refused."""
        with pytest.raises(ValidationError):
            ModelSpec.from_fields("step", str(random_step_file)).build()

    def test_claim_on_bipartite_step(self, step_file):
        """Test a K_3-freeness claim on the bipartite step graphon."""
        model = ModelSpec.from_fields("step", str(step_file), claim_ks_free=3).build()
        assert model.clique_bound == 3

    def test_false_claims_refused(self):
        """Test claims the model cannot meet."""
        with pytest.raises(ValidationError):
            ModelSpec.parse("er:1", claim_ks_free=4).build()
        with pytest.raises(ValidationError):
            ModelSpec.parse("ksfree:5", claim_ks_free=4).build()

    def test_claim_tightens_bound(self):
        """Test the smaller of the model and claimed bounds wins."""
        assert ModelSpec.parse("ksfree:5", claim_ks_free=6).build().clique_bound == 5
        assert ModelSpec.parse("er:0", claim_ks_free=3).build().clique_bound == 3

    def test_sample_carries_descriptor(self):
        """Test samples are labelled with the spec text."""
        graph = ModelSpec.parse("er:1").build().sample(4, seed=1)
        assert graph.descriptor == "er:1"
        assert graph.edge_count == 6

    def test_ksfree_models_are_deterministic(self):
        """Test every model accepted with a K_s-freeness claim is edge-deterministic."""
        for text, claim in (("ksfree:4", 4), ("line-trianglefree", 3), ("er:0", 4)):
            assert ModelSpec.parse(text, claim_ks_free=claim).build().deterministic
