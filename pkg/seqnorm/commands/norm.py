"""`seqnorm norm`: the norm of one vector in a catalog space."""

from ..spaces import norm
from . import add_common_arguments, emit, experiment, space_of, vector_of

FIELDS = ("space", "n", "value", "tolerance", "certification")


def run(args) -> int:
    config = experiment(args, "norm")
    E = space_of(config)
    x = vector_of(args.vec)
    result = norm(E, x)
    row = {
        "space": str(E),
        "n": x.size,
        "value": result.value,
        "tolerance": result.tolerance,
        "certification": result.certification,
    }
    return emit("norm", config, FIELDS, [row])


def create_norm_command(subparsers):
    """Create and configure the norm subcommand."""
    parser = subparsers.add_parser("norm", help="norm of a vector")
    parser.add_argument("--space", help="descriptor expression, e.g. lp(3/2)")
    parser.add_argument("--vec", help="comma separated entries")
    add_common_arguments(parser)
    parser.set_defaults(handler=run)
    return parser
