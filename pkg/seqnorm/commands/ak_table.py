"""`seqnorm ak-table`: approximation numbers of id: E_n → ℓ₂ⁿ."""

from ..models.results import Report
from ..snumbers import approximation_report
from . import add_common_arguments, dimensions, emit, experiment, k_policy, space_of

FIELDS = ("space", "n", "k", "lower_ref", "upper", "exact_if_known", "ratio", "certification")


def run(args) -> int:
    config = experiment(args, "ak-table")
    E = space_of(config)
    rows = []
    report = Report(name=f"ak-table {E}")
    for n in config.dims or [1]:
        table = approximation_report(E, n, config.ks(n))
        for row in table.rows:
            bounds = row.bounds
            rows.append(
                {
                    "space": str(E),
                    "n": n,
                    "k": row.k,
                    "lower_ref": bounds.lower,
                    "upper": bounds.upper,
                    "exact_if_known": row.exact,
                    "ratio": bounds.upper / bounds.lower if bounds.lower > 0 else None,
                    "certification": bounds.certification,
                }
            )
            if row.exact is not None:
                report.add(f"n={n} k={row.k}", abs(bounds.upper - row.exact), 1e-9 * row.exact)
    return emit("ak-table", config, FIELDS, rows, [report])


def create_ak_table_command(subparsers):
    """Create and configure the ak-table subcommand."""
    parser = subparsers.add_parser("ak-table", help="approximation numbers table")
    parser.add_argument("--space")
    parser.add_argument("--n", type=dimensions)
    parser.add_argument("--k", type=k_policy, default=None, help="'all' or fractions of n")
    add_common_arguments(parser)
    parser.set_defaults(handler=run)
    return parser
