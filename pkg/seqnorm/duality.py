"""Köthe duals, power spaces and diagonal multipliers.

Closed forms are used wherever an exact identity is known; the rest is
handled by convex reformulations solved with the kernels in `numerics`.
"""

import logging
import math
from typing import List, Optional, Tuple

import numpy as np

from .exceptions import DimensionMismatch, InvalidDescriptor
from .models.descriptors import (
    BASE_TYPES,
    Dual,
    LorentzD,
    LorentzPQ,
    Lp,
    Marcinkiewicz,
    Multiplier,
    Power,
    SpaceDescriptor,
)
from .models.experiment import SolverConfig
from .models.results import BoundPair, Certification, NormResult
from .models.vector import ArrayLike, as_array
from .numerics import minimize_convex, project_cone_slice, project_monotone, rng_stream
from .spaces import (
    attestation,
    check_power,
    evaluator,
    fundamental,
    fundamental_sequence,
    is_quasi_normed,
    marcinkiewicz_weights,
    norm,
    rearrange,
    simplify,
    supporting_functional,
)

logger = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)
BLOCK_LIMIT = 64


# Köthe duals


def level_function_dual(weights: np.ndarray, p: float, x: ArrayLike) -> float:
    """‖x‖ in the Köthe dual of d(w, p) for non-increasing weights w.

    The slopes of the least concave majorant of (W_k, S_k) are the weighted
    antitonic regression of x*_k / w_k; the dual norm is their weighted
    ℓ_{p'} sum (their maximum for p = 1).
    """
    star = rearrange(x)
    w = np.asarray(weights, dtype=float)[: star.size]
    slopes = project_monotone(star / w, weights=w, nonnegative=False)
    if p == 1:
        return float(slopes[0])
    conj = p / (p - 1.0)
    top = float(slopes[0])
    if top == 0:
        return 0.0
    return float(top * np.sum(w * (slopes / top) ** conj) ** (1.0 / conj))


def _closed_dual(E: SpaceDescriptor, x: np.ndarray) -> Optional[float]:
    n = x.size
    k = np.arange(1, n + 1, dtype=float)
    if isinstance(E, LorentzD):
        return level_function_dual(E.w.weights(n), E.p, x)
    if isinstance(E, LorentzPQ) and E.normed:
        if math.isinf(E.q):
            return None
        return level_function_dual(k ** (E.q / E.p - 1.0), E.q, x)
    if isinstance(E, Marcinkiewicz):
        lam = marcinkiewicz_weights(E, n)
        increments = np.diff(k / lam, prepend=0.0)
        if np.all(np.diff(increments) <= 1e-12):
            return float(rearrange(x) @ increments)
    return None


def _exact_dual(E: SpaceDescriptor, x: np.ndarray) -> Optional[float]:
    dual = simplify(Dual(inner=E))
    if isinstance(dual, BASE_TYPES):
        return norm(dual, x).value
    return _closed_dual(E, x) if isinstance(dual, Dual) else None


def reciprocal_dual(
    E: SpaceDescriptor, x: ArrayLike, config: Optional[SolverConfig] = None
) -> float:
    """1 / min{‖y‖_E : y non-increasing, y >= 0, <x*, y> = 1}."""
    config = config or SolverConfig()
    a = rearrange(x)
    if not np.any(a):
        return 0.0
    f = evaluator(E)
    starts = [
        np.full(a.size, 1.0 / a.sum()),
        np.eye(a.size)[0] / a[0],
        a / float(a @ a),
    ]
    result = minimize_convex(
        f,
        lambda y: supporting_functional(E, y),
        lambda z: project_cone_slice(z, a),
        starts,
        config,
    )
    return 1.0 / result.value


def kothe_dual_norm(
    E: SpaceDescriptor,
    x: ArrayLike,
    method: str = "auto",
    config: Optional[SolverConfig] = None,
) -> NormResult:
    """‖x‖_{(E_n)^×} = sup{Σ|x_i y_i| : ‖y‖_E <= 1}.

    `method="generic"` forces the reciprocal convex solver even when a closed
    form exists.
    """
    arr = as_array(x)
    config = config or SolverConfig()
    if not np.any(arr):
        return NormResult.exact(0.0)
    simple = simplify(E)
    if is_quasi_normed(simple):
        raise InvalidDescriptor(f"Köthe dual of the quasi-normed space {simple} is not supported")
    if method not in ("auto", "generic"):
        raise ValueError(f"Invalid dual method {method!r}: use 'auto' or 'generic'")

    if method == "auto":
        dual = simplify(Dual(inner=simple))
        if not isinstance(dual, Dual):
            return norm(dual, arr)
        closed = _closed_dual(simple, arr)
        if closed is not None:
            return NormResult.exact(closed)
        logger.debug("no closed form for the dual of %s; using the reciprocal solver", simple)
    return NormResult.numerical(reciprocal_dual(simple, arr, config), tolerance=config.tolerance)


def kothe_dual_upper(E: SpaceDescriptor, x: ArrayLike) -> float:
    """A certified upper bound for ‖x‖_{(E_n)^×} that needs no solver.

    The closed form when one is known. Otherwise Σ_k (x*_k - x*_{k+1})·k/λ_E(k),
    which bounds every symmetric norm with fundamental function k/λ_E(k). For
    quasi-normed E only ‖x‖_∞ <= ‖x‖_E is used, giving ‖x‖_1.
    """
    arr = as_array(x)
    if not np.any(arr):
        return 0.0
    simple = simplify(E)
    if is_quasi_normed(simple):
        return float(np.abs(arr).sum())
    dual = simplify(Dual(inner=simple))
    if isinstance(dual, BASE_TYPES):
        return norm(dual, arr).value
    closed = _closed_dual(simple, arr)
    if closed is not None:
        return closed
    star = rearrange(arr)
    k = np.arange(1, star.size + 1, dtype=float)
    drops = star - np.append(star[1:], 0.0)
    return float(drops @ (k / fundamental_sequence(simple, star.size)))


# Powers


def power_norm(E: SpaceDescriptor, r: float, x: ArrayLike) -> NormResult:
    """‖x‖_{E^r} = ‖|x|^{1/r}‖_E^r."""
    arr = as_array(x)
    check_power(simplify(E), r)
    inner = norm(E, np.abs(arr) ** (1.0 / r))
    value = inner.value**r
    if inner.certification == Certification.EXACT:
        return NormResult.exact(value)
    return NormResult.numerical(value, tolerance=r * (inner.tolerance or 0.0) or 1e-12)


# Multipliers


def m2e_chain(F: SpaceDescriptor) -> SpaceDescriptor:
    """(((F^×)^2)^×)^{1/2}."""
    return Power(inner=Dual(inner=Power(inner=Dual(inner=F), r=2.0)), r=0.5)


def m2e_norm(F: SpaceDescriptor, x: ArrayLike) -> NormResult:
    """‖x‖_{M(ℓ₂,F)} through the power/dual chain, for 2-concave F."""
    attested = attestation(F)
    if not (attested.normed and attested.two_concave):
        raise InvalidDescriptor(
            f"{F} carries no 2-concavity attestation; the identity for M(ℓ₂, F) is not available"
        )
    arr = as_array(x)
    chain = m2e_chain(F)
    return power_norm(chain.inner, chain.r, arr)


def _witnesses(m: np.ndarray) -> List[np.ndarray]:
    n = m.size
    a = np.abs(m)
    order = np.argsort(-a, kind="stable")
    candidates = [np.ones(n), np.eye(n)[order[0]]]
    for beta in (0.25, 0.5, 1.0, 2.0, 3.0):
        candidates.append(a**beta)
    sizes = range(1, n + 1) if n <= BLOCK_LIMIT else sorted({2**j for j in range(int(math.log2(n)) + 1)} | {n})
    for j in sizes:
        block = np.zeros(n)
        block[order[:j]] = 1.0
        candidates.append(block)
    return [c for c in candidates if np.any(c)]


def _ascend(
    E: SpaceDescriptor,
    F: SpaceDescriptor,
    m: np.ndarray,
    y: np.ndarray,
    config: SolverConfig,
    ceiling: float,
) -> Tuple[float, np.ndarray]:
    """Step-halving ascent of ‖m y‖_F / ‖y‖_E over y >= 0."""
    f_E, f_F = evaluator(E), evaluator(F)

    def ratio(v: np.ndarray) -> float:
        denominator = f_E(v)
        return f_F(m * v) / denominator if denominator > 0 else 0.0

    y = y / max(f_E(y), 1e-300)
    value = ratio(y)
    step = 0.5
    for _ in range(config.max_iterations):
        if value >= ceiling * (1 - config.tolerance):
            break
        top = f_F(m * y)
        if top == 0:
            break
        grad = supporting_functional(F, m * y) * m - top * supporting_functional(E, y)
        grad_norm = float(np.linalg.norm(grad))
        if grad_norm == 0:
            break
        candidate = np.maximum(y + step * grad / grad_norm * np.linalg.norm(y), 0.0)
        candidate_value = ratio(candidate) if np.any(candidate) else 0.0
        if candidate_value > value:
            y = candidate / f_E(candidate)
            value = candidate_value
            step = min(2.0 * step, 1.0)
        else:
            step *= 0.5
            if step < 1e-12:
                break
    return value, y


def _schur_constant(E: SpaceDescriptor, F: SpaceDescriptor, m: np.ndarray) -> Optional[float]:
    """M(ℓ₂, ℓ_{p,q}) at a constant-modulus multiplier, p < q <= 2."""
    a = np.abs(m)
    if not (isinstance(E, Lp) and E.p == 2 and isinstance(F, LorentzPQ)):
        return None
    if not (F.p < F.q <= 2) or not np.all(a == a[0]):
        return None
    n = a.size
    return float(a[0] * fundamental(F, n).value / math.sqrt(n))


def multiplier_upper(E: SpaceDescriptor, F: SpaceDescriptor, m: ArrayLike) -> Tuple[float, bool]:
    """Certified upper bound for ‖m‖_{M(E,F)} without search; flag says exact."""
    arr = as_array(m)
    source, target = simplify(E), simplify(F)
    closed = simplify(Multiplier(source=source, target=target))
    if not isinstance(closed, Multiplier):
        result = norm(closed, arr)
        if result.certification == Certification.EXACT:
            return result.value, True
    schur = _schur_constant(source, target, arr)
    if schur is not None:
        return schur, True

    bounds = [norm(target, arr).value]
    attested = attestation(target)
    if isinstance(source, Lp) and source.p == 2 and attested.normed and attested.two_concave:
        chain = simplify(m2e_chain(target))
        if not isinstance(chain, Multiplier):
            result = norm(chain, arr)
            if result.certification == Certification.EXACT:
                return result.value, True
    if attested.normed and not is_quasi_normed(source):
        dual = _exact_dual(source, arr)
        if dual is not None:
            bounds.append(dual)
    return min(bounds), False


def multiplier_norm(
    E: SpaceDescriptor,
    F: SpaceDescriptor,
    m: ArrayLike,
    config: Optional[SolverConfig] = None,
    method: str = "auto",
) -> BoundPair:
    """Bounds on ‖m‖_{M(E_n,F_n)} = sup{‖m y‖_F : ‖y‖_E <= 1}.

    `method="search"` runs the witness ascent even when the upper bound is a
    closed form; a searched ratio above the upper bound fails the `consistent`
    check.
    """
    if method not in ("auto", "search"):
        raise ValueError(f"Invalid multiplier method {method!r}: use 'auto' or 'search'")
    config = config or SolverConfig()
    arr = as_array(m)
    if not np.any(arr):
        return BoundPair(lower=0.0, upper=0.0, certification=Certification.EXACT)
    upper, exact = multiplier_upper(E, F, arr)
    if exact and method == "auto":
        return BoundPair(lower=upper, upper=upper, certification=Certification.EXACT)

    source, target = simplify(E), simplify(F)
    best, witness = 0.0, None
    starts = _witnesses(arr)
    for stream in range(config.restarts):
        rng = rng_stream(config.seed, stream)
        starts.append(np.abs(rng.standard_normal(arr.size)))
    for y in starts:
        value, point = _ascend(source, target, arr, y, config, upper)
        if value > best:
            best, witness = value, point
        if best >= upper * (1 - config.tolerance):
            break

    consistent = best <= upper * (1 + 1e-9)
    if not consistent:
        logger.warning(
            "searched ratio %.12g exceeds the upper bound %.12g for M(%s, %s)", best, upper, source, target
        )
    pair = BoundPair(
        lower=min(best, upper),
        upper=upper,
        witness=tuple(float(v) for v in witness) if witness is not None else None,
        checks={"consistent": consistent},
    )
    if pair.gap > config.tolerance:
        logger.warning(
            "multiplier norm M(%s, %s) bracketed with relative gap %.3g", source, target, pair.gap
        )
    return pair


def identity_norm(
    E: SpaceDescriptor,
    F: SpaceDescriptor,
    n: int,
    config: Optional[SolverConfig] = None,
) -> BoundPair:
    """Bounds on ‖id: E_n → F_n‖, with the fundamental sandwich when E = ℓ₂."""
    if n < 1:
        raise DimensionMismatch(f"Invalid dimension n={n}: must be positive")
    bounds = multiplier_norm(E, F, np.ones(n), config)
    attested = attestation(F)
    source = simplify(E)
    if not (isinstance(source, Lp) and source.p == 2 and attested.two_concave):
        return bounds

    reference = fundamental(F, n).value / math.sqrt(n)
    checks = dict(bounds.checks)
    checks["sandwich_lower"] = bounds.upper >= reference * (1 - 1e-9)
    if attested.m2 is not None:
        checks["sandwich_upper"] = bounds.lower <= SQRT2 * attested.m2 * reference * (1 + 1e-9)
    return bounds.model_copy(update={"checks": checks})
