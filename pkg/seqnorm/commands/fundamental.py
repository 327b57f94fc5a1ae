"""`seqnorm fundamental`: fundamental functions λ_E(n)."""

from ..spaces import fundamental
from . import add_common_arguments, dimensions, emit, experiment, space_of

FIELDS = ("space", "n", "value", "certification")


def run(args) -> int:
    config = experiment(args, "fundamental")
    E = space_of(config)
    rows = []
    for n in config.dims or [1]:
        result = fundamental(E, n)
        rows.append({"space": str(E), "n": n, "value": result.value, "certification": result.certification})
    return emit("fundamental", config, FIELDS, rows)


def create_fundamental_command(subparsers):
    """Create and configure the fundamental subcommand."""
    parser = subparsers.add_parser("fundamental", help="fundamental function")
    parser.add_argument("--space")
    parser.add_argument("--n", type=dimensions, help="dimensions, e.g. 4,8,16")
    add_common_arguments(parser)
    parser.set_defaults(handler=run)
    return parser
