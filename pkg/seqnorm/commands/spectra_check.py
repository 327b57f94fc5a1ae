"""`seqnorm spectra-check`: Weyl inequalities on given or seeded matrices."""

from ..models.results import Certification
from ..numerics import rng_stream
from ..snumbers import weyl_check
from ..utils.artifacts import read_matrix
from ..utils.expressions import parse
from . import add_common_arguments, dimensions, emit, experiment, space_of

FIELDS = ("space", "matrix", "check", "lhs", "rhs", "passed", "certification")


def run(args) -> int:
    config = experiment(args, "spectra-check")
    F = space_of(config) if config.spaces else parse("lp(1)")
    if args.matrix is not None:
        matrices = [("file", read_matrix(args.matrix).to_array())]
    else:
        matrices = [
            (f"gaussian-{n}-{index}", rng_stream(config.seed, 1_000 * n + index).standard_normal((n, n)))
            for n in config.dims or [8]
            for index in range(args.trials)
        ]
    rows, reports = [], []
    for label, A in matrices:
        report = weyl_check(A, F)
        reports.append(report)
        for check in report.checks:
            rows.append(
                {
                    "space": str(F),
                    "matrix": label,
                    "check": check.name,
                    "lhs": check.lhs,
                    "rhs": check.rhs,
                    "passed": check.passed,
                    "certification": Certification.NUMERICAL,
                }
            )
    return emit("spectra-check", config, FIELDS, rows, reports)


def create_spectra_check_command(subparsers):
    """Create and configure the spectra-check subcommand."""
    parser = subparsers.add_parser("spectra-check", help="Weyl inequality checks")
    parser.add_argument("--space", help="symmetric space F for the norm form (default lp(1))")
    parser.add_argument("--matrix", default=None, help="CSV matrix file (first line rows,cols)")
    parser.add_argument("--n", type=dimensions)
    parser.add_argument("--trials", type=int, default=10, help="seeded matrices per size")
    add_common_arguments(parser)
    parser.set_defaults(handler=run)
    return parser
