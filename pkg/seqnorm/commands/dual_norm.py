"""`seqnorm dual-norm`: Köthe dual norms."""

from ..duality import kothe_dual_norm
from . import add_common_arguments, emit, experiment, space_of, vector_of

FIELDS = ("space", "n", "method", "value", "tolerance", "certification")


def run(args) -> int:
    config = experiment(args, "dual-norm")
    E = space_of(config)
    x = vector_of(args.vec)
    result = kothe_dual_norm(E, x, method=args.method, config=config.solver)
    row = {
        "space": str(E),
        "n": x.size,
        "method": args.method,
        "value": result.value,
        "tolerance": result.tolerance,
        "certification": result.certification,
    }
    return emit("dual-norm", config, FIELDS, [row])


def create_dual_norm_command(subparsers):
    """Create and configure the dual-norm subcommand."""
    parser = subparsers.add_parser("dual-norm", help="norm in the Köthe dual")
    parser.add_argument("--space")
    parser.add_argument("--vec")
    parser.add_argument("--method", choices=("auto", "generic"), default="auto")
    add_common_arguments(parser)
    parser.set_defaults(handler=run)
    return parser
