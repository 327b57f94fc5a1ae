"""`seqnorm report-all`: the full acceptance suite."""

from ..acceptance import run_all
from . import add_common_arguments, emit, experiment

FIELDS = ("criterion", "check", "lhs", "rhs", "passed", "certification")


def run(args) -> int:
    config = experiment(args, "report-all")
    reports = run_all(seed=config.seed, quick=args.quick)
    rows = [
        {
            "criterion": report.name,
            "check": check.name,
            "lhs": check.lhs,
            "rhs": check.rhs,
            "passed": check.passed,
            "certification": report.certification,
        }
        for report in reports
        for check in report.checks
    ]
    return emit("report-all", config, FIELDS, rows, reports)


def create_report_all_command(subparsers):
    """Create and configure the report-all subcommand."""
    parser = subparsers.add_parser("report-all", help="run every acceptance check")
    parser.add_argument("--quick", action="store_true", help="reduced sweeps")
    add_common_arguments(parser)
    parser.set_defaults(handler=run)
    return parser
