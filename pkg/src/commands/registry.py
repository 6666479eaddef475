"""Name -> command class mapping for the CLI."""

from src.core.config import AppConfig

from .base import BaseCommand
from .compare import CompareCommand
from .cylinder import CylinderCommand
from .dump import DumpCommand
from .gen import GenCommand
from .verify import VerifyCommand

COMMANDS: dict[str, type[BaseCommand]] = {
    "gen": GenCommand,
    "verify": VerifyCommand,
    "cylinder": CylinderCommand,
    "compare": CompareCommand,
    "dump": DumpCommand,
}


def get_command(name: str, config: AppConfig | None = None) -> BaseCommand:
    try:
        return COMMANDS[name](config)
    except KeyError:
        raise KeyError(f"Unknown command: {name}. Available: {sorted(COMMANDS)}") from None
