#!/usr/bin/env python3
"""Command-line entry point for universal-graph constructions and analysis.

Every invocation runs inside a root ``run`` span; commands are instrumented
by their decorators. Data goes to stdout, diagnostics to stderr.

Exit codes: 0 success / same, 1 error, 2 different or failed check,
3 inconclusive comparison.
"""

import argparse
import logging
import os
import sys
from pathlib import Path
from typing import Any

from dotenv import load_dotenv

from src.commands import COMMANDS, EXIT_ERROR, CommandResult, get_command
from src.core.config import AppConfig
from src.core.exceptions import ConfigError
from src.observability.config import ObservabilityConfig, initialize_observability, shutdown
from src.observability.context import ObservabilitySpan
from src.observability.emitters import emit_error, emit_info
from src.observability.handlers import (
    CompositeHandler,
    ConsoleHandler,
    JsonLinesHandler,
    LogHandler,
    NullHandler,
    OTelConfig,
    OTelGrpcHandler,
)

GLOBAL_KEYS = {"command", "log_level", "env_file"}

MODEL_HELP = (
    "er, line-universal, line-trianglefree, ksfree or step; compact forms such as "
    "er:3/10, ksfree:4 or line-universal@uniform:-10:10 are accepted"
)


def _add_model_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", required=True, help=MODEL_HELP)
    parser.add_argument("--p", help="Edge probability for er (p/q or decimal)")
    parser.add_argument("--s", type=int, help="Forbidden clique size for ksfree (>= 4)")
    parser.add_argument("--step", help="Step-graphon JSON file for step")
    parser.add_argument("--measure", help="gaussian:M:S, uniform:LO:HI or blocks:m1,m2,...")
    parser.add_argument(
        "--claim-ksfree",
        type=int,
        dest="claim_ksfree",
        help="Refuse the model unless it is certified K_s-free",
    )


def _add_command(sub: argparse._SubParsersAction, name: str) -> argparse.ArgumentParser:
    """Subparser whose epilog lists the fields of the command's parameter schema."""
    command = COMMANDS[name]()
    return sub.add_parser(
        name,
        help=command.description,
        epilog=command.fields_help(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )


def _add_report_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--report", choices=["text", "json"], help="Report format (default text)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="universal-graphs",
        description="Continuous universal graphs: construction, sampling and verification",
    )
    parser.add_argument(
        "--log-level",
        "-l",
        default=None,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Logging level for stderr diagnostics (default from LOG_LEVEL or config)",
    )
    parser.add_argument("--env-file", "-e", default=".env", help="Path to .env file (default: .env)")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = _add_command(sub, "gen")
    _add_model_flags(gen)
    gen.add_argument("--n", type=int, required=True, help="Vertex count")
    gen.add_argument("--seed", type=int, required=True, help="64-bit seed")
    gen.add_argument("--out", help="Output file (default stdout)")
    gen.add_argument("--format", choices=["edgelist", "json"], help="Output format (default edgelist)")

    verify = _add_command(sub, "verify")
    verify.add_argument("--in", dest="input", required=True, help="Graph file")
    verify.add_argument("--input-format", choices=["edgelist", "json"], help="Default from extension")
    verify.add_argument(
        "--checks",
        nargs="+",
        required=True,
        help="clique:K census:K[:MODE] extension:W:B[:MODE] purity degrees",
    )
    verify.add_argument("--seed", type=int, help="Seed for sampled checks (default: seed in file)")
    verify.add_argument("--tuples", type=int, help="Tuples per extension check (default 500)")
    _add_report_flag(verify)

    cylinder = _add_command(sub, "cylinder")
    _add_model_flags(cylinder)
    cylinder.add_argument("--pattern", required=True, help="Pattern file: n, then n rows of 0/1")
    cylinder.add_argument("--method", choices=["exact", "mc"], default="exact")
    cylinder.add_argument("--samples", type=int, help="Monte Carlo samples")
    cylinder.add_argument("--seed", type=int, help="Seed (required for mc)")
    cylinder.add_argument("--shards", type=int, help="Monte Carlo substreams (default 8)")
    cylinder.add_argument("--threads", type=int, default=1, help="Worker threads (default 1)")
    _add_report_flag(cylinder)

    compare = _add_command(sub, "compare")
    compare.add_argument("--a", required=True, help="First model, compact form")
    compare.add_argument("--b", required=True, help="Second model, compact form")
    compare.add_argument("--k", type=int, default=2, help="Corner size, 2..4 (default 2)")
    compare.add_argument("--samples", type=int, required=True, help="Samples per side (>= 100)")
    compare.add_argument("--seed", type=int, required=True, help="Seed for both sides unless --seed-b is given")
    compare.add_argument("--seed-b", type=int, dest="seed_b", help="Independent seed for side b")
    compare.add_argument(
        "--degree-profile", action="store_true", dest="degree_profile", help="Also compare degrees"
    )
    compare.add_argument("--degree-n", type=int, dest="degree_n", help="Graph size for degrees")
    _add_report_flag(compare)

    dump = _add_command(sub, "dump")
    dump.add_argument("--model", required=True, help="line-universal, line-trianglefree or ksfree:S")
    dump.add_argument("--s", type=int, help="Forbidden clique size for ksfree")
    dump.add_argument("--steps", type=int, required=True, help="Construction steps to build")

    return parser


def command_params(args: argparse.Namespace) -> dict[str, Any]:
    """Subcommand parameters: global flags, unset options and false switches dropped."""
    return {
        key: value
        for key, value in vars(args).items()
        if key not in GLOBAL_KEYS and value is not None and value is not False
    }


def setup_logging(level: str) -> logging.Logger:
    """Configure stdlib logging on stderr; stdout is reserved for data."""
    logging.basicConfig(
        level=getattr(logging, level.upper()),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=[logging.StreamHandler(sys.stderr)],
    )
    return logging.getLogger(__name__)


def create_handler(config: ObservabilityConfig) -> LogHandler:
    """OTLP export for OTEL_ENDPOINT, JSON lines for LOG_FILE, stderr lines for LOG_CONSOLE."""
    handlers: list[LogHandler] = []
    if config.otel_endpoint:
        handlers.append(
            OTelGrpcHandler(
                OTelConfig(
                    endpoint=config.otel_endpoint,
                    insecure=config.otel_insecure,
                    service_name=config.service_name,
                )
            )
        )
    log_file = os.environ.get("LOG_FILE")
    if log_file:
        handlers.append(JsonLinesHandler(Path(log_file)))
    if config.console_enabled:
        handlers.append(ConsoleHandler(color=config.console_color))
    if not handlers:
        return NullHandler()
    return handlers[0] if len(handlers) == 1 else CompositeHandler(handlers)


def setup_observability() -> None:
    config = ObservabilityConfig.from_env()
    initialize_observability(handler=create_handler(config), config=config)


def report_result(result: CommandResult) -> None:
    if result.output:
        sys.stdout.write(result.output)
        sys.stdout.flush()
    if result.error:
        prefix = f"{result.error_type}: " if result.error_type else ""
        print(f"error: {prefix}{result.error}", file=sys.stderr)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    load_dotenv(args.env_file)

    try:
        app_config = AppConfig.load()
    except ConfigError as e:
        print(f"error: {e.message}", file=sys.stderr)
        return EXIT_ERROR

    logger = setup_logging(args.log_level or app_config.log_level)
    setup_observability()

    try:
        with ObservabilitySpan("run") as ctx:
            params = command_params(args)
            emit_info("run.started", ctx, {"command": args.command, "params": params})
            result = get_command(args.command, app_config).run(**params)
            if result.success:
                emit_info("run.completed", ctx, {"command": args.command, "exit_code": result.exit_code})
            else:
                emit_error(
                    "run.failed",
                    ctx,
                    {
                        "command": args.command,
                        "exit_code": result.exit_code,
                        "error_type": result.error_type,
                        "error_message": result.error,
                    },
                )
            logger.debug("Command %s finished with exit code %d", args.command, result.exit_code)
    finally:
        shutdown()

    report_result(result)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
