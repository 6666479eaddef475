"""Tests for schema loading, validation and field help."""

import json

import pytest

from src.contracts import (
    COMMAND_SCHEMAS_PATH,
    ContractValidationError,
    SchemaLoadError,
    generate_fields_text,
    load_schema,
    schema_errors,
    validate_document,
)


class TestLoadSchema:
    """Tests for load_schema."""

    def test_bundled_name(self):
        """Test a bare file name resolves under the bundled schemas."""
        schema = load_schema("graph.schema.json")
        assert schema["title"] == "SampledGraph"
        assert schema["required"] == ["n", "edges"]

    def test_absolute_path(self, tmp_path):
        """Test an absolute path is read as is."""
        path = tmp_path / "custom.schema.json"
        path.write_text(json.dumps({"type": "object", "required": ["k"]}), encoding="utf-8")
        assert load_schema(path) == {"type": "object", "required": ["k"]}

    def test_command_schemas_present(self):
        """Test every subcommand ships a parameter schema."""
        names = {p.name for p in COMMAND_SCHEMAS_PATH.glob("*.schema.json")}
        assert names == {f"{n}.schema.json" for n in ("gen", "verify", "cylinder", "compare", "dump")}

    def test_not_found(self):
        """Test a missing schema raises SchemaLoadError."""
        with pytest.raises(SchemaLoadError, match="File not found"):
            load_schema("absent.schema.json")

    def test_invalid_json(self, tmp_path):
        """Test malformed JSON raises SchemaLoadError."""
        path = tmp_path / "broken.schema.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(SchemaLoadError, match="Invalid JSON"):
            load_schema(path)


class TestSchemaErrors:
    """Tests for schema_errors."""

    def test_valid_document(self):
        """Test a matching document has no errors."""
        schema = load_schema("step_graphon.schema.json")
        assert schema_errors({"masses": ["1/2", "1/2"], "values": [[0, 1], [1, 0]]}, schema) == []

    def test_nested_paths(self):
        """Test paths are dotted and errors are ordered by path."""
        schema = load_schema("step_graphon.schema.json")
        errors = schema_errors({"masses": [], "values": [[0, "x"]]}, schema)
        assert [e["path"] for e in errors] == ["masses", "values.0.1"]
        assert errors[0]["message"].startswith("[]")
        assert "'x'" in errors[1]["message"]

    def test_root_path(self):
        """Test errors at the top level are reported at <root>."""
        schema = load_schema("step_graphon.schema.json")
        errors = schema_errors({"values": [[1]]}, schema)
        assert errors == [{"path": "<root>", "message": "'masses' is a required property"}]


class TestValidateDocument:
    """Tests for validate_document."""

    def test_accepts_valid_graph(self):
        """Test a well-formed graph document passes."""
        validate_document({"n": 3, "edges": [[0, 1], [1, 2]], "seed": 7}, "graph.schema.json")

    def test_first_error_names_argument(self):
        """Test the message leads with the first failing path."""
        with pytest.raises(ContractValidationError, match="Invalid argument 'edges.0'") as exc_info:
            validate_document({"n": 3, "edges": [[0]]}, "graph.schema.json")
        assert exc_info.value.errors[0]["path"] == "edges.0"

    def test_root_error_message(self):
        """Test a root error is reported without a path."""
        with pytest.raises(ContractValidationError) as exc_info:
            validate_document({"n": 3}, "graph.schema.json")
        assert exc_info.value.message == "'edges' is a required property"

    def test_claim_below_minimum(self):
        """Test a K_s claim below 4 is rejected."""
        with pytest.raises(ContractValidationError, match="ks_free"):
            validate_document({"masses": [1], "values": [[0]], "ks_free": 3}, "step_graphon.schema.json")

    def test_conditional_requirement(self):
        """Test Monte Carlo cylinders need samples and a seed."""
        schema = load_schema(COMMAND_SCHEMAS_PATH / "cylinder.schema.json")
        errors = schema_errors({"model": "er:1/2", "pattern": "p.txt", "method": "mc"}, schema)
        assert {e["message"] for e in errors} == {
            "'samples' is a required property",
            "'seed' is a required property",
        }
        validate_document({"model": "er:1/2", "pattern": "p.txt", "method": "exact"}, schema)


class TestGenerateFieldsText:
    """Tests for generate_fields_text."""

    def test_required_and_optional(self):
        """Test both sections list field descriptions."""
        text = generate_fields_text(load_schema(COMMAND_SCHEMAS_PATH / "cylinder.schema.json"))
        lines = text.splitlines()
        assert lines[0] == "required:"
        assert lines[1] == "  model: Model kind or compact model form"
        assert "optional:" in lines
        assert "  seed: Seed for Monte Carlo" in lines
        assert lines.index("optional:") == 4

    def test_only_required(self):
        """Test the optional section is omitted when empty."""
        schema = {"required": ["n"], "properties": {"n": {"description": "Vertex count"}}}
        assert generate_fields_text(schema) == "required:\n  n: Vertex count"
