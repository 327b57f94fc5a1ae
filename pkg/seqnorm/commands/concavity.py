"""`seqnorm concavity`: 2-concavity constant estimates."""

from ..models.results import Report
from ..summing import concavity_estimate
from . import add_common_arguments, dimensions, emit, experiment, space_of

FIELDS = ("space", "n", "trials", "lower", "upper", "certification")


def run(args) -> int:
    config = experiment(args, "concavity")
    E = space_of(config)
    rows = []
    report = Report(name=f"concavity {E}")
    for n in config.dims or [8]:
        bounds = concavity_estimate(E, n, trials=args.trials, seed=config.seed, config=config.solver)
        rows.append(
            {
                "space": str(E),
                "n": n,
                "trials": args.trials,
                "lower": bounds.lower,
                "upper": bounds.upper,
                "certification": bounds.certification,
            }
        )
        report.add(f"n={n} lower<=upper", bounds.lower, bounds.upper, 1e-9)
        report.add(f"n={n} attested", 0.0 if bounds.passed else 1.0, 0.0)
    return emit("concavity", config, FIELDS, rows, [report])


def create_concavity_command(subparsers):
    """Create and configure the concavity subcommand."""
    parser = subparsers.add_parser("concavity", help="estimate M(2)(E_n)")
    parser.add_argument("--space")
    parser.add_argument("--n", type=dimensions)
    parser.add_argument("--trials", type=int, default=1000)
    add_common_arguments(parser)
    parser.set_defaults(handler=run)
    return parser
