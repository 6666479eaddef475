"""Command parameter validation decorator.

``@validated_command`` checks parameters against the command's JSON schema
before execution and turns violations into a failed CommandResult (exit 1),
so argument mistakes never surface as tracebacks.
"""

import functools
import logging
from collections.abc import Callable
from typing import Any, TypeVar

from src.contracts.schema_parser import schema_errors

from .result import EXIT_ERROR, CommandResult

logger = logging.getLogger(__name__)

F = TypeVar("F", bound=Callable[..., CommandResult])


def validated_command(func: F) -> F:
    """Validate ``**params`` against ``self.get_parameters_schema()``.

    Example:
        class GenCommand(BaseCommand):
            @traced_command()
            @validated_command
            def execute(self, model: str, n: int, seed: int, **options) -> CommandResult:
                ...
    """

    @functools.wraps(func)
    def wrapper(self: Any, **params: Any) -> CommandResult:
        error = validate_parameters(params, self.get_parameters_schema())
        if error:
            name = getattr(self, "name", func.__name__)
            logger.warning("Command %s validation failed: %s", name, error)
            return CommandResult.fail(error, "validation", EXIT_ERROR)
        return func(self, **params)

    return wrapper  # type: ignore[return-value]


def validate_parameters(params: dict[str, Any], schema: dict[str, Any]) -> str | None:
    """Error message for the first violation, or None if ``params`` is valid."""
    required = schema.get("required", [])
    missing = [arg for arg in required if arg not in params]
    if missing:
        if len(missing) == 1:
            return f"Missing required argument: {missing[0]}"
        return f"Missing required arguments: {', '.join(missing)}"

    errors = schema_errors(params, schema)
    if not errors:
        return None
    first = errors[0]
    if first["path"] != "<root>":
        return f"Invalid argument '{first['path']}': {first['message']}"
    return f"Validation error: {first['message']}"
