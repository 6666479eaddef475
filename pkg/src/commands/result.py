"""Typed result wrapper for command execution.

Commands never raise to the CLI; they return a CommandResult that main.py
maps to stdout, stderr and the process exit status.
"""

from dataclasses import dataclass, field
from typing import Any

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_DIFFERENT = 2
EXIT_INCONCLUSIVE = 3


@dataclass
class CommandResult:
    """Outcome of one command.

    - success: Whether the command ran to completion without errors
    - data: Structured result (report summaries, counts)
    - output: Text for stdout
    - error: Error message on failure
    - error_type: Exception class name or classification
    - exit_code: Process exit status

    Example:
        result = CommandResult.ok({"edges": 6}, output=text)
        result = CommandResult.fail("Precondition violated: ...", "PreconditionError")
    """

    success: bool
    data: Any = None
    output: str = ""
    error: str | None = None
    error_type: str | None = None
    exit_code: int = EXIT_OK
    metadata: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def ok(
        cls,
        data: Any,
        output: str = "",
        exit_code: int = EXIT_OK,
        metadata: dict[str, Any] | None = None,
    ) -> "CommandResult":
        return cls(success=True, data=data, output=output, exit_code=exit_code, metadata=metadata or {})

    @classmethod
    def fail(
        cls,
        error: str,
        error_type: str = "unknown",
        exit_code: int = EXIT_ERROR,
        data: Any = None,
        output: str = "",
    ) -> "CommandResult":
        return cls(
            success=False,
            data=data,
            output=output,
            error=error,
            error_type=error_type,
            exit_code=exit_code,
        )

    def to_dict(self) -> dict[str, Any]:
        result: dict[str, Any] = {"success": self.success, "exit_code": self.exit_code}
        if self.success:
            result["result"] = self.data
        else:
            result["error"] = self.error
            if self.error_type:
                result["error_type"] = self.error_type
        if self.metadata:
            result.update(self.metadata)
        return result

    def summary(self) -> dict[str, Any]:
        return self.to_dict()

    def __bool__(self) -> bool:
        return self.success
