"""`seqnorm kfun`: Peetre K-functionals."""

from ..exceptions import ConfigError
from ..interpolation import k_functional
from ..utils.expressions import parse_couple, parse_numbers
from . import add_common_arguments, emit, experiment, vector_of

FIELDS = ("couple", "n", "t", "value", "split_sparsity", "tolerance", "certification")


def run(args) -> int:
    config = experiment(args, "kfun")
    if args.couple:
        E0, E1 = parse_couple(args.couple)
    elif len(config.spaces) >= 2:
        E0, E1 = parse_couple(",".join(config.spaces[:2]))
    else:
        raise ConfigError("a couple is required (--couple 'E0,E1')")
    x = vector_of(args.vec)
    if not args.t:
        raise ConfigError("at least one t is required (--t)")
    rows = []
    for t in parse_numbers(args.t):
        result, split = k_functional(E0, E1, float(t), x, method=args.method, config=config.solver)
        rows.append(
            {
                "couple": f"{E0},{E1}",
                "n": x.size,
                "t": float(t),
                "value": result.value,
                "split_sparsity": split.sparsity(),
                "tolerance": result.tolerance,
                "certification": result.certification,
            }
        )
    return emit("kfun", config, FIELDS, rows)


def create_kfun_command(subparsers):
    """Create and configure the kfun subcommand."""
    parser = subparsers.add_parser("kfun", help="K-functional of a couple")
    parser.add_argument("--couple", help="'E0,E1', e.g. 'lp(1),lp(inf)'")
    parser.add_argument("--vec")
    parser.add_argument("--t", help="comma separated values of t")
    parser.add_argument("--method", choices=("auto", "generic"), default="auto")
    add_common_arguments(parser)
    parser.set_defaults(handler=run)
    return parser
