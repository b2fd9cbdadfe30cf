#!/usr/bin/env python3
"""
fockfn command line

Builds functions of the annihilation operator in truncated Fock space and runs
the identity, eigen-relation, commutator and convergence checks.
"""

import argparse
import logging
import sys
from collections.abc import Sequence

import yaml
from dispatch import (
    DispatcherFactory,
    DispatcherOptions,
    ProgramInfo,
    describe_commands,
)
from fockfn import FockfnError, FockfnSettings
from pydantic import ValidationError

from .commands import EXIT_IO, EXIT_VALIDATION, fockfn_commands, fockfn_handlers
from .run_config import add_run_arguments, run_config_from_args

logger = logging.getLogger(__name__)

PROGRAM = ProgramInfo(
    name="fockfn",
    version="0.1.0",
    description=(
        "Analytic functions of the annihilation operator in truncated Fock space"
    ),
)


def configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level, logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=[logging.StreamHandler(sys.stderr)],
        force=True,
    )


def _parse_args(
    options: DispatcherOptions, argv: Sequence[str] | None
) -> argparse.Namespace:
    parser = argparse.ArgumentParser(prog=PROGRAM.name, description=PROGRAM.description)
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in describe_commands(options):
        subparser = subparsers.add_parser(
            command["name"],
            help=command["description"],
            description=command["description"],
        )
        add_run_arguments(subparser)
    return parser.parse_args(argv)


def main(argv: Sequence[str] | None = None) -> int:
    """Parse flags, validate the run and dispatch; returns the exit status"""
    options = DispatcherOptions(
        program_info=PROGRAM, commands=fockfn_commands, handlers=fockfn_handlers
    )
    args = _parse_args(options, argv)

    try:
        settings = FockfnSettings.from_env()
    except (ValidationError, ValueError) as e:
        print(f"error: bad FOCKFN_* environment: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    configure_logging(args.log_level or settings.log_level)

    try:
        config = run_config_from_args(args, settings)
    except OSError as e:
        logger.error(f"Cannot read config file: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    except (ValidationError, ValueError, FockfnError, yaml.YAMLError) as e:
        logger.error(f"Invalid run configuration: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION

    # errors outside the exit-code table propagate with their traceback
    dispatcher = DispatcherFactory(logger=logger).create(options)
    return dispatcher(config.command, config.model_dump())


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
