"""Estimates for (E,p)-summing norms of finite operators.

Lower bounds come from explicit vector families and are certified: weak
norms in the denominators are exact or replaced by certified upper bounds.
Upper bounds come from the quantitative form of the main inclusion theorem.
"""

import itertools
import logging
import math
from typing import Iterable, List, Optional

import numpy as np

from .duality import identity_norm
from .exceptions import (
    FamilyTooLarge,
    InvalidDescriptor,
    InvalidParameter,
    MissingAttestation,
    ParameterOrder,
)
from .models.descriptors import LorentzD, Lp, Marcinkiewicz, Multiplier, SpaceDescriptor
from .models.experiment import SolverConfig
from .models.operators import FiniteOperator, VectorFamily
from .models.results import BoundPair, Certification, NormResult, Report
from .numerics import jacobi_svd, rng_stream
from .spaces import attestation, evaluator, norm, simplify, supporting_functional

logger = logging.getLogger(__name__)

SIGN_LIMIT = 20
SIGN_DRAWS = 4096
SIGN_CHUNK = 1 << 14
SQRT2 = math.sqrt(2.0)


def _row_norms(X: SpaceDescriptor, rows: np.ndarray) -> np.ndarray:
    simple = simplify(X)
    if isinstance(simple, Lp):
        return np.linalg.norm(rows, ord=simple.p, axis=1)
    f = evaluator(simple)
    return np.array([f(row) for row in rows])


def _sign_patterns(count: int) -> Iterable[np.ndarray]:
    """All sign vectors with a leading +1, in chunks."""
    chunk: List[tuple] = []
    for tail in itertools.product((1.0, -1.0), repeat=count - 1):
        chunk.append((1.0,) + tail)
        if len(chunk) == SIGN_CHUNK:
            yield np.asarray(chunk)
            chunk = []
    if chunk:
        yield np.asarray(chunk)


def _largest_singular_value(A: np.ndarray) -> float:
    return float(jacobi_svd(A)[1][0])


def _weak_upper(A: np.ndarray, p: float, X: SpaceDescriptor) -> float:
    """Certified upper bound for the weak ℓ_p norm of the rows of A in X."""
    N, n = A.shape
    by_norms = float(np.sum(_row_norms(X, A) ** p) ** (1.0 / p))
    sigma = _largest_singular_value(A)
    euclidean = identity_norm(Lp(p=2.0), X, n).upper
    by_sigma = sigma * max(1.0, N ** (1.0 / p - 0.5)) * euclidean
    return min(by_norms, by_sigma)


def _weak_lower(A: np.ndarray, p: float, X: SpaceDescriptor, config: SolverConfig) -> float:
    """sup over ‖α‖_{p'} <= 1 of ‖Σ α_i x_i‖_X by a Boyd-type power iteration."""
    N = A.shape[0]
    f = evaluator(X)
    best = float(np.max(_row_norms(X, A)))
    rng = rng_stream(config.seed, 0)
    starts = [np.full(N, 1.0), np.eye(N)[int(np.argmax(_row_norms(X, A)))]]
    starts += [rng.standard_normal(N) for _ in range(min(config.restarts, 8))]
    for alpha in starts:
        alpha = _norming(alpha, p)
        for _ in range(config.max_iterations):
            v = alpha @ A
            value = f(v)
            best = max(best, value)
            u = A @ supporting_functional(X, v)
            nxt = _norming(u, p)
            if np.allclose(nxt, alpha, rtol=0, atol=config.tolerance):
                break
            alpha = nxt
    return best


def _norming(u: np.ndarray, p: float) -> np.ndarray:
    """Unit vector of ℓ_{p'} norming u in the ℓ_p pairing."""
    if not np.any(u):
        return np.zeros_like(u)
    if p == 1:
        return np.sign(u)
    a = np.abs(u)
    return np.sign(u) * (a / np.linalg.norm(a, ord=p)) ** (p - 1.0)


def _weak_exact(A: np.ndarray, p: float, X: SpaceDescriptor, strict: bool) -> Optional[float]:
    """The weak ℓ_p norm where a closed form or enumeration applies, else None."""
    N, n = A.shape
    if N == 1:
        return norm(X, A[0]).value
    if isinstance(X, Lp):
        if X.p == 2 and p == 2:
            return _largest_singular_value(A)
        if math.isinf(X.p):
            return float(np.max(np.linalg.norm(A, ord=p, axis=0)))
        if X.p == 1 and n <= SIGN_LIMIT:
            # extreme points of the dual ball are sign vectors
            return float(max(np.max(np.linalg.norm(signs @ A.T, ord=p, axis=1)) for signs in _sign_patterns(n)))
    if p == 1:
        if N <= SIGN_LIMIT:
            return float(max(np.max(_row_norms(X, signs @ A)) for signs in _sign_patterns(N)))
        if strict:
            raise FamilyTooLarge(f"sign enumeration needs N <= {SIGN_LIMIT}, got N = {N}")
    return None


def weak_p_bounds(
    family: VectorFamily,
    p: float,
    X: SpaceDescriptor,
    config: Optional[SolverConfig] = None,
    exact: bool = False,
) -> BoundPair:
    """Bounds on sup_{‖x'‖ <= 1} (Σ |<x', x_i>|^p)^{1/p} for x_i in X_n.

    With `exact`, families too large for sign enumeration raise FamilyTooLarge
    instead of falling back to estimation.
    """
    if p < 1:
        raise InvalidParameter(f"Invalid exponent p={p}: need p >= 1")
    config = config or SolverConfig()
    A = family.to_array()
    simple = simplify(X)
    value = _weak_exact(A, p, simple, exact)
    if value is not None:
        return BoundPair(lower=value, upper=value, certification=Certification.EXACT)

    upper = _weak_upper(A, p, simple)
    if p == 1:
        logger.warning("family of %d vectors: weak-1 norm estimated from random signs", A.shape[0])
        lower = _random_signs(A, simple, config)
    else:
        lower = _weak_lower(A, p, simple, config)
    return BoundPair(lower=min(lower, upper), upper=upper)


def weak_p_upper(family: VectorFamily, p: float, X: SpaceDescriptor) -> float:
    """Certified upper bound for the weak ℓ_p norm, exact when available."""
    if p < 1:
        raise InvalidParameter(f"Invalid exponent p={p}: need p >= 1")
    A = family.to_array()
    simple = simplify(X)
    value = _weak_exact(A, p, simple, strict=False)
    return value if value is not None else _weak_upper(A, p, simple)


def _random_signs(A: np.ndarray, X: SpaceDescriptor, config: SolverConfig) -> float:
    f = evaluator(X)
    rng = rng_stream(config.seed, 1)
    signs = rng.choice((-1.0, 1.0), size=(SIGN_DRAWS, A.shape[0]))
    values = _row_norms(X, signs @ A)
    best_signs = signs[int(np.argmax(values))].copy()
    best = float(values.max())
    improved = True
    while improved:
        improved = False
        for i in range(best_signs.size):
            best_signs[i] *= -1.0
            value = f(best_signs @ A)
            if value > best:
                best, improved = value, True
            else:
                best_signs[i] *= -1.0
    return best


def weak_p_norm(
    family: VectorFamily,
    p: float,
    X: SpaceDescriptor,
    config: Optional[SolverConfig] = None,
) -> NormResult:
    """‖(x_i)‖_{ℓ_p^w(X)}: exact where enumeration or a closed form applies."""
    config = config or SolverConfig()
    bounds = weak_p_bounds(family, p, X, config)
    if bounds.certification == Certification.EXACT:
        return NormResult.exact(bounds.lower)
    return NormResult.numerical(bounds.lower, tolerance=max(bounds.gap, config.tolerance))


def summing_constant(E: SpaceDescriptor, p: float) -> float:
    """Certified upper bound for c_p^E = ‖id: ℓ_p ↪ E‖ on infinite sequences.

    1 when E is attested p-convex or is m(n^a) with a <= 1/p. For d(w, r) with
    r < p, Hölder gives c <= ‖w‖_s^{1/r}, s = p/(p-r), and Σ k^{-αs} <= 1 + 1/(αs - 1).
    """
    simple = simplify(E)
    if attestation(simple).convex >= p:
        return 1.0
    if isinstance(simple, Marcinkiewicz) and simple.exponent is not None and simple.exponent <= 1.0 / p:
        return 1.0
    if isinstance(simple, LorentzD) and math.isfinite(p):
        s = p / (p - simple.p)
        decay = simple.w.alpha * s
        if decay > 1:
            return (1.0 + 1.0 / (decay - 1.0)) ** (1.0 / (s * simple.p))
    raise InvalidDescriptor(f"no certified constant for ℓ_{p:g} ↪ {simple}")


def section_constant(E: SpaceDescriptor, p: float, n: int) -> float:
    """Certified lower bound for c_p^E from the n-dimensional section."""
    if attestation(E).convex >= p:
        return 1.0
    return max(1.0, identity_norm(Lp(p=p), E, n).lower)


def summing_lower(
    T: FiniteOperator,
    E: SpaceDescriptor,
    p: float,
    families: Iterable[VectorFamily],
    config: Optional[SolverConfig] = None,
) -> BoundPair:
    """Lower bound for π_{E,p}(T) from explicit families of domain vectors."""
    config = config or SolverConfig()
    matrix = T.matrix.to_array()
    best, witness = 0.0, None
    for family in families:
        A = family.to_array()
        if A.shape[1] != T.domain_dim:
            raise InvalidParameter(
                f"family '{family.label}' has dimension {A.shape[1]}, operator domain {T.domain_dim}"
            )
        if not np.any(A):
            continue
        images = _row_norms(T.codomain, A @ matrix.T)
        top = norm(E, images).value
        if top == 0:
            continue
        weak = weak_p_upper(family, p, T.domain)
        value = top / (summing_constant(E, p) * weak)
        logger.debug("family %s: ratio %.12g", family.label or "?", value)
        if value > best:
            best, witness = value, family.label
    return BoundPair(lower=best, note=f"best family: {witness}" if witness else "")


def summing_upper_main(E: SpaceDescriptor) -> float:
    """√2·c·M₍₂₎(E), the bound for π_{M(ℓ₂,E),2}(id: E_n → ℓ₂ⁿ)."""
    attested = attestation(E)
    if not attested.two_concave or attested.m2 is None:
        raise MissingAttestation(f"{E} has no recorded 2-concavity constant")
    constant = 1.0
    if isinstance(simplify(Multiplier(source=Lp(p=2.0), target=E)), Multiplier):
        logger.warning(
            "M(ℓ₂, %s) has no catalog identity; bound holds up to the interpolation functor constant",
            E,
        )
    return SQRT2 * constant * attested.m2


def _tuple_ratio(f, tuple_: np.ndarray) -> float:
    numerator = math.sqrt(sum(f(row) ** 2 for row in tuple_))
    denominator = f(np.sqrt(np.sum(tuple_**2, axis=0)))
    return numerator / denominator if denominator > 0 else 0.0


def concavity_estimate(
    E: SpaceDescriptor,
    n: int,
    trials: int = 1000,
    seed: int = 0,
    config: Optional[SolverConfig] = None,
) -> BoundPair:
    """Lower bound for M₍₂₎(E_n) from sampled tuples plus local ascent."""
    if n < 2:
        raise InvalidParameter(f"Invalid dimension n={n}: need n >= 2")
    config = config or SolverConfig(seed=seed)
    f = evaluator(E)
    rng = rng_stream(seed, 2)
    best, best_tuple = 0.0, None
    for m in range(2, min(8, n) + 1):
        tuple_ = np.eye(n)[:m]
        value = _tuple_ratio(f, tuple_)
        if value > best:
            best, best_tuple = value, tuple_
    for _ in range(trials):
        m = int(rng.integers(2, 9))
        tuple_ = rng.standard_normal((m, n)) * rng.random((m, 1))
        value = _tuple_ratio(f, tuple_)
        if value > best:
            best, best_tuple = value, tuple_

    if best_tuple is not None:
        scale = 0.1
        for _ in range(config.max_iterations // 5):
            candidate = best_tuple + scale * rng.standard_normal(best_tuple.shape)
            value = _tuple_ratio(f, candidate)
            if value > best:
                best, best_tuple = value, candidate
            else:
                scale *= 0.98

    attested = attestation(E)
    upper = attested.m2 if attested.m2 is not None else math.inf
    consistent = best <= upper * (1 + 1e-9)
    if not consistent:
        logger.warning("sampled ratio %.12g exceeds the attested M(2)(%s) = %.12g", best, E, upper)
        upper = math.inf
    return BoundPair(lower=best, upper=upper, checks={"attested": consistent})


def bennett_carl_exponent(u: float) -> float:
    """r with 1/r = 1/u - 1/2, so that id: ℓ_u → ℓ₂ is (r, 1)-summing."""
    if not 1 <= u <= 2:
        raise InvalidParameter(f"Invalid exponent u={u}: need 1 <= u <= 2")
    inverse = 1.0 / u - 0.5
    return math.inf if inverse == 0 else 1.0 / inverse


def _is_identity_into_l2(T: FiniteOperator, E: SpaceDescriptor) -> bool:
    matrix = T.matrix.to_array()
    square = matrix.shape[0] == matrix.shape[1]
    return (
        square
        and np.array_equal(matrix, np.eye(matrix.shape[0]))
        and simplify(T.codomain) == Lp(p=2.0)
        and simplify(T.domain) == simplify(E)
    )


def inclusion_consistency(
    T: FiniteOperator,
    E: SpaceDescriptor,
    p: float,
    q: float,
    families: List[VectorFamily],
    rhs_upper: Optional[float] = None,
    config: Optional[SolverConfig] = None,
) -> Report:
    """Check π_{M(ℓ_r,E),q}(T) <= c_p^E·(c_q^{M(ℓ_r,E)})^{-1}·π_{E,p}(T), 1/r = 1/p - 1/q.

    Estimators only bound both sides, so the report records non-contradiction:
    the lower bound of the left side against every available upper bound.
    """
    if not 1 <= p < q:
        raise ParameterOrder(f"inclusion needs 1 <= p < q, got p={p}, q={q}")
    config = config or SolverConfig()
    r = 1.0 / (1.0 / p - (0.0 if math.isinf(q) else 1.0 / q))
    F = simplify(Multiplier(source=Lp(p=r), target=E))
    n = T.domain_dim

    lhs = summing_lower(T, F, q, families, config)
    rhs = summing_lower(T, E, p, families, config)
    factor = summing_constant(E, p) / section_constant(F, q, n)

    report = Report(name=f"inclusion {E} p={p} q={q}")
    report.values.update(
        {"r": r, "lhs_lower": lhs.lower, "rhs_lower": rhs.lower, "factor": factor,
         "implied_rhs_lower": lhs.lower / factor}
    )
    tol = 1e-9 * max(1.0, lhs.lower)
    if rhs_upper is not None:
        report.add("lhs_lower<=factor*rhs_upper", lhs.lower, factor * rhs_upper, tol)
        report.add("rhs_lower<=rhs_upper", rhs.lower, rhs_upper, tol)
    if q == 2 and r == 2 and _is_identity_into_l2(T, E):
        try:
            report.add("lhs_lower<=main_bound", lhs.lower, summing_upper_main(E), tol)
        except MissingAttestation:
            logger.info("no main-theorem bound for %s", E)
    return report


def coordinate_family(n: int) -> VectorFamily:
    return VectorFamily.of(np.eye(n), label="coordinates")


def generate_families(
    n: int,
    count: int = 16,
    seed: int = 0,
    strategies: Iterable[str] = ("coordinates", "blocks", "gaussian", "rank-one"),
) -> List[VectorFamily]:
    """Seeded families of domain vectors for summing estimates."""
    families: List[VectorFamily] = []
    strategies = list(strategies)
    if "coordinates" in strategies:
        families.append(coordinate_family(n))
    if "blocks" in strategies:
        size = 1
        while size < n:
            size *= 2
            blocks = [np.where(np.arange(n) // size == b, 1.0, 0.0) for b in range(-(-n // size))]
            families.append(VectorFamily.of(np.asarray(blocks), label=f"blocks-{size}"))
    for index in range(count):
        rng = rng_stream(seed, 100 + index)
        if "gaussian" in strategies:
            members = int(rng.integers(1, 2 * n + 1))
            rows = rng.standard_normal((members, n))
            rows /= np.linalg.norm(rows, axis=1, keepdims=True)
            families.append(VectorFamily.of(rows, label=f"gaussian-{index}"))
        if "rank-one" in strategies:
            u = rng.standard_normal(n)
            rows = np.eye(n) + 0.5 * np.outer(rng.standard_normal(n), u) / np.linalg.norm(u)
            families.append(VectorFamily.of(rows, label=f"rank-one-{index}"))
    logger.debug("generated %d families for n=%d", len(families), n)
    return families
