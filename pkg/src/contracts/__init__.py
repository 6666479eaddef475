"""JSON-schema contracts for command parameters and input files."""

from .exceptions import ContractValidationError, SchemaLoadError
from .schema_parser import (
    COMMAND_SCHEMAS_PATH,
    SCHEMAS_BASE_PATH,
    generate_fields_text,
    load_schema,
    schema_errors,
    validate_document,
)

__all__ = [
    "COMMAND_SCHEMAS_PATH",
    "SCHEMAS_BASE_PATH",
    "ContractValidationError",
    "SchemaLoadError",
    "generate_fields_text",
    "load_schema",
    "schema_errors",
    "validate_document",
]
