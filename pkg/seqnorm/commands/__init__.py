"""Commands module for organizing subcommands."""

import argparse
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence

from ..config import load_experiment_file, settings
from ..exceptions import ConfigError
from ..models.experiment import ExperimentConfig
from ..models.results import Report
from ..utils.artifacts import ArtifactSink, summarize
from ..utils.expressions import parse, parse_numbers

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2


def add_common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=None, help="seed (default: SEQNORM_SEED)")
    parser.add_argument("--tol", type=float, default=None, help="solver tolerance")
    parser.add_argument("--out", type=Path, default=None, help="directory for CSV and summary")
    parser.add_argument("--config", type=Path, default=None, help="experiment file")
    parser.add_argument("--section", default=None, help="section of the experiment file")


def dimensions(text: str) -> List[int]:
    """"4,8,16" -> [4, 8, 16]."""
    try:
        return [int(item) for item in text.replace(" ", "").split(",") if item]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from None


def k_policy(text: str):
    if text.strip() == "all":
        return "all"
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'all' or fractions, got {text!r}") from None


def experiment(args: argparse.Namespace, kind: str) -> ExperimentConfig:
    """Merge an experiment file (if any) with command-line flags; flags win."""
    overrides: Dict[str, Any] = {
        "kind": kind,
        "tolerance": args.tol,
        "seed": args.seed,
        "output": args.out,
    }
    if getattr(args, "space", None):
        overrides["spaces"] = [args.space]
    if getattr(args, "n", None):
        overrides["dims"] = sorted(args.n)
    if getattr(args, "k", None) is not None:
        overrides["k_policy"] = args.k
    if args.config is not None:
        return load_experiment_file(args.config, args.section, overrides)

    solver = settings.solver(tolerance=args.tol, seed=args.seed)
    values = {key: value for key, value in overrides.items() if value is not None}
    values.pop("tolerance", None)
    values["seed"] = solver.seed
    return ExperimentConfig(solver=solver, **values)


def space_of(config: ExperimentConfig, index: int = 0):
    if len(config.spaces) <= index:
        raise ConfigError("a space expression is required (--space or 'spaces' in the config)")
    return parse(config.spaces[index])


def vector_of(text: Optional[str]):
    if not text:
        raise ConfigError("a vector is required (--vec)")
    return parse_numbers(text)


def emit(
    command: str,
    config: ExperimentConfig,
    fieldnames: Sequence[str],
    rows: Iterable[Dict[str, Any]],
    reports: Sequence[Report] = (),
) -> int:
    """Write the table and summary; exit 1 when any report failed."""
    sink = ArtifactSink(command, config.output)
    sink.table(fieldnames, list(rows))
    reports = list(reports)
    if reports:
        sink.summary(summarize(f"seqnorm {command} (seed {config.seed})", reports))
    return EXIT_OK if all(report.passed for report in reports) else EXIT_FAILED
