"""Command-line entry point."""

import argparse
import importlib
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional

from pydantic import ValidationError

from .. import __version__
from ..config import settings
from ..exceptions import SeqnormError
from . import EXIT_CONFIG

logger = logging.getLogger(__name__)


def discover_commands() -> Dict[str, Callable]:
    """Dynamically discover all subcommand modules and their create functions."""
    commands = {}

    commands_dir = Path(__file__).parent

    for file_path in sorted(commands_dir.glob("*.py")):
        if file_path.name in ["__init__.py", "main.py"]:
            continue

        module_name = file_path.stem
        full_module_name = f"seqnorm.commands.{module_name}"

        try:
            module = importlib.import_module(full_module_name)
        except ImportError as e:
            logger.warning("Failed to import %s command: %s", module_name, e)
            continue

        create_func_name = f"create_{module_name}_command"
        if hasattr(module, create_func_name):
            commands[module_name] = getattr(module, create_func_name)

    return commands


def create_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seqnorm",
        description="Norms, duals, multipliers and s-numbers of finite symmetric sequence spaces.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for create in discover_commands().values():
        create(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Run one subcommand; exit 0 on success, 1 on failed checks, 2 on bad input."""
    settings.configure_logging()
    parser = create_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (SeqnormError, ValidationError) as exc:
        logger.error("%s: %s", args.command, exc)
        print(f"seqnorm {args.command}: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
