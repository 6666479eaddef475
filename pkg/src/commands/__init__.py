"""CLI subcommands, one class each, validated against their JSON schemas."""

from .base import BaseCommand, build_model, model_spec_from_params
from .compare import CompareCommand
from .cylinder import CylinderCommand
from .dump import DumpCommand
from .gen import GenCommand
from .registry import COMMANDS, get_command
from .result import EXIT_DIFFERENT, EXIT_ERROR, EXIT_INCONCLUSIVE, EXIT_OK, CommandResult
from .validation import validate_parameters, validated_command
from .verify import VerifyCommand

__all__ = [
    "COMMANDS",
    "EXIT_DIFFERENT",
    "EXIT_ERROR",
    "EXIT_INCONCLUSIVE",
    "EXIT_OK",
    "BaseCommand",
    "CommandResult",
    "CompareCommand",
    "CylinderCommand",
    "DumpCommand",
    "GenCommand",
    "VerifyCommand",
    "build_model",
    "get_command",
    "model_spec_from_params",
    "validate_parameters",
    "validated_command",
]
