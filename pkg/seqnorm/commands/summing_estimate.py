"""`seqnorm summing-estimate`: lower bounds for (E,p)-summing norms."""

import math

import numpy as np

from ..exceptions import MissingAttestation
from ..models.descriptors import Lp, Multiplier
from ..models.operators import FiniteOperator, Matrix
from ..models.results import Report
from ..spaces import simplify
from ..summing import generate_families, summing_lower, summing_upper_main
from ..utils.artifacts import read_matrix
from ..utils.expressions import parse
from . import add_common_arguments, dimensions, emit, experiment, space_of

FIELDS = ("space", "domain", "codomain", "n", "p", "families", "lower", "upper", "certification")


def _main_bound(T: FiniteOperator, E, p: float) -> float:
    """√2·M₍₂₎ for id: X_n → ℓ₂ⁿ measured in M(ℓ₂, X), +inf otherwise."""
    matrix = T.matrix.to_array()
    identity = matrix.shape[0] == matrix.shape[1] and np.array_equal(matrix, np.eye(matrix.shape[0]))
    if not identity or p != 2 or simplify(T.codomain) != Lp(p=2.0):
        return math.inf
    if simplify(E) != simplify(Multiplier(source=Lp(p=2.0), target=T.domain)):
        return math.inf
    try:
        return summing_upper_main(T.domain)
    except MissingAttestation:
        return math.inf


def run(args) -> int:
    config = experiment(args, "summing-estimate")
    E = space_of(config)
    domain, codomain = parse(args.domain), parse(args.codomain)
    if args.matrix is not None:
        operators = [FiniteOperator(matrix=read_matrix(args.matrix), domain=domain, codomain=codomain)]
    else:
        operators = [
            FiniteOperator(matrix=Matrix.of(np.eye(n)), domain=domain, codomain=codomain)
            for n in config.dims or [4]
        ]
    rows = []
    report = Report(name=f"summing-estimate {E}")
    for T in operators:
        families = generate_families(T.domain_dim, count=args.families, seed=config.seed)
        bounds = summing_lower(T, E, args.p, families, config.solver)
        upper = _main_bound(T, E, args.p)
        rows.append(
            {
                "space": str(E),
                "domain": str(domain),
                "codomain": str(codomain),
                "n": T.domain_dim,
                "p": args.p,
                "families": len(families),
                "lower": bounds.lower,
                "upper": upper,
                "certification": bounds.certification,
            }
        )
        report.add(f"n={T.domain_dim} lower<=upper", bounds.lower, upper, 1e-6 * max(1.0, bounds.lower))
    return emit("summing-estimate", config, FIELDS, rows, [report])


def create_summing_estimate_command(subparsers):
    """Create and configure the summing-estimate subcommand."""
    parser = subparsers.add_parser("summing-estimate", help="(E,p)-summing norm estimates")
    parser.add_argument("--space", help="sequence space E of the summing norm")
    parser.add_argument("--p", type=float, default=2.0)
    parser.add_argument("--domain", default="lp(2)")
    parser.add_argument("--codomain", default="lp(2)")
    parser.add_argument("--matrix", default=None, help="CSV matrix file (first line rows,cols)")
    parser.add_argument("--n", type=dimensions, help="identity operators of these sizes")
    parser.add_argument("--families", type=int, default=16, help="random families per strategy")
    add_common_arguments(parser)
    parser.set_defaults(handler=run)
    return parser
