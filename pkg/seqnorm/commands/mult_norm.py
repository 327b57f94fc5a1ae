"""`seqnorm mult-norm`: norms of diagonal multipliers M(E, F)."""

from ..duality import multiplier_norm
from ..exceptions import ConfigError
from ..models.results import Report
from ..utils.expressions import parse
from . import add_common_arguments, emit, experiment, vector_of

FIELDS = ("from", "to", "n", "lower", "upper", "gap", "certification")


def run(args) -> int:
    config = experiment(args, "mult-norm")
    if args.source:
        E = parse(args.source)
    else:
        E = parse(config.spaces[0]) if config.spaces else None
    if args.target:
        F = parse(args.target)
    else:
        F = parse(config.spaces[1]) if len(config.spaces) > 1 else None
    if E is None or F is None:
        raise ConfigError("both --from and --to are required")
    m = vector_of(args.vec)
    bounds = multiplier_norm(E, F, m, config.solver, method=args.method)
    row = {
        "from": str(E),
        "to": str(F),
        "n": m.size,
        "lower": bounds.lower,
        "upper": bounds.upper,
        "gap": bounds.gap,
        "certification": bounds.certification,
    }
    report = Report(name=f"mult-norm {E} -> {F}")
    for name, passed in bounds.checks.items():
        report.add(name, 0.0 if passed else 1.0, 0.0)
    return emit("mult-norm", config, FIELDS, [row], [report] if report.checks else [])


def create_mult_norm_command(subparsers):
    """Create and configure the mult-norm subcommand."""
    parser = subparsers.add_parser("mult-norm", help="norm of a diagonal multiplier")
    parser.add_argument("--from", dest="source")
    parser.add_argument("--to", dest="target")
    parser.add_argument("--vec")
    parser.add_argument("--method", choices=("auto", "search"), default="auto")
    add_common_arguments(parser)
    parser.set_defaults(handler=run)
    return parser
