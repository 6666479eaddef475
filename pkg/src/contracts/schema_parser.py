"""Schema loading, validation and introspection."""

import json
from functools import lru_cache
from pathlib import Path
from typing import Any

import jsonschema

from .exceptions import ContractValidationError, SchemaLoadError

PROJECT_ROOT = Path(__file__).parent.parent.parent

SCHEMAS_BASE_PATH = PROJECT_ROOT / "src" / "contracts" / "schemas"

# Parameter schemas for CLI commands, one per subcommand name
COMMAND_SCHEMAS_PATH = SCHEMAS_BASE_PATH / "commands"


@lru_cache(maxsize=64)
def _read_schema(path: Path) -> str:
    return path.read_text(encoding="utf-8")


def load_schema(schema_path: str | Path) -> dict[str, Any]:
    """Load a JSON schema.

    Args:
        schema_path: Absolute path, path relative to the project root, or a bare
            file name under ``src/contracts/schemas``

    Raises:
        SchemaLoadError: If the file is missing or is not valid JSON
    """
    path = Path(schema_path)
    if not path.is_absolute():
        bundled = SCHEMAS_BASE_PATH / path
        path = bundled if bundled.exists() else PROJECT_ROOT / path

    if not path.exists():
        raise SchemaLoadError(str(schema_path), "File not found")

    try:
        return json.loads(_read_schema(path))
    except json.JSONDecodeError as e:
        raise SchemaLoadError(str(schema_path), f"Invalid JSON: {e}") from e


def schema_errors(document: Any, schema: dict[str, Any]) -> list[dict[str, str]]:
    """All validation errors, each as ``{"path": "a.b", "message": ...}``."""
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(document), key=lambda e: list(e.path))
    return [
        {"path": ".".join(str(p) for p in e.path) or "<root>", "message": e.message}
        for e in errors
    ]


def validate_document(document: Any, schema: dict[str, Any] | str | Path) -> None:
    """Validate ``document``; the first error leads the exception message.

    Raises:
        ContractValidationError: If the document does not match.
    """
    if not isinstance(schema, dict):
        schema = load_schema(schema)
    errors = schema_errors(document, schema)
    if errors:
        first = errors[0]
        message = (
            f"Invalid argument '{first['path']}': {first['message']}"
            if first["path"] != "<root>"
            else first["message"]
        )
        raise ContractValidationError(message, errors)


def generate_fields_text(schema: dict[str, Any]) -> str:
    """Plain-text list of required and optional fields, for ``--help`` epilogs."""
    required = schema.get("required", [])
    properties = schema.get("properties", {})
    lines = ["required:"]
    lines.extend(f"  {name}: {properties.get(name, {}).get('description', '')}" for name in required)
    optional = [name for name in properties if name not in required]
    if optional:
        lines.append("optional:")
        lines.extend(f"  {name}: {properties[name].get('description', '')}" for name in optional)
    return "\n".join(lines)
