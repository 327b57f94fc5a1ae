"""Base catalog of symmetric sequence spaces.

Rearrangements, norms, fundamental functions, Cesàro means, Orlicz function
validation, exact descriptor simplification, lattice attestations and
supporting functionals (norm subgradients) used by the solvers.
"""

import logging
import math
from functools import lru_cache
from typing import Callable, List

import numpy as np

from .exceptions import EmptyGrid, InvalidDescriptor
from .models.descriptors import (
    INF,
    Attestation,
    Dual,
    LorentzD,
    LorentzPQ,
    Lp,
    Marcinkiewicz,
    Multiplier,
    Orlicz,
    OrliczFamily,
    OrliczFunction,
    Power,
    SpaceDescriptor,
    WeightRule,
)
from .models.results import NormResult, ValidationReport
from .models.vector import ArrayLike, as_array

logger = logging.getLogger(__name__)

Evaluator = Callable[[np.ndarray], float]

POWLOG_CONCAVE_LIMIT = (3.0 + math.sqrt(7.0)) / 4.0


def conjugate(p: float) -> float:
    """Hölder conjugate p' with 1/p + 1/p' = 1."""
    if p == 1:
        return INF
    if math.isinf(p):
        return 1.0
    return 1.0 / (1.0 - 1.0 / p)


def rearrangement_order(x: ArrayLike) -> np.ndarray:
    """Indices sorting |x| non-increasingly; ties keep the original order."""
    return np.argsort(-np.abs(as_array(x)), kind="stable")


def rearrange(x: ArrayLike) -> np.ndarray:
    """Decreasing rearrangement x*."""
    arr = np.abs(as_array(x))
    return arr[np.argsort(-arr, kind="stable")]


def cesaro_mean(x: ArrayLike) -> np.ndarray:
    """x**_n = (1/n) Σ_{k<=n} x*_k."""
    star = rearrange(x)
    return np.cumsum(star) / np.arange(1, star.size + 1)


# Simplification


def simplify(E: SpaceDescriptor) -> SpaceDescriptor:
    """Rewrite E with exact isometric identities until no rule applies.

    Power nodes are checked for legality before they are rewritten, so an
    illegal power raises InvalidDescriptor instead of producing a bogus ℓ_p.
    """
    if isinstance(E, LorentzPQ):
        return Lp(p=E.p) if E.p == E.q else E
    if isinstance(E, LorentzD):
        return Lp(p=E.p) if E.w.alpha == 0 else E
    if isinstance(E, Orlicz):
        if E.phi.family == OrliczFamily.POWER:
            return Lp(p=E.phi.params[0])
        return E
    if isinstance(E, Marcinkiewicz):
        if E.base is not None:
            base = simplify(E.base)
            if isinstance(base, Lp):
                return simplify(Marcinkiewicz(exponent=0.0 if math.isinf(base.p) else 1.0 / base.p))
            return Marcinkiewicz(base=base)
        if E.exponent == 1.0:
            return Lp(p=1.0)
        if E.exponent == 0.0:
            return Lp(p=INF)
        return E
    if isinstance(E, Dual):
        return _simplify_dual(simplify(E.inner))
    if isinstance(E, Power):
        inner = simplify(E.inner)
        check_power(inner, E.r)
        return _simplify_power(inner, E.r)
    if isinstance(E, Multiplier):
        return _simplify_multiplier(simplify(E.source), simplify(E.target))
    return E


def _simplify_dual(inner: SpaceDescriptor) -> SpaceDescriptor:
    if isinstance(inner, Lp):
        return Lp(p=conjugate(inner.p))
    if isinstance(inner, Dual):
        return inner.inner
    if isinstance(inner, Power) and inner.r >= 1:
        # (Y^r)^× = M(Y, ℓ_r)^r
        target = _simplify_multiplier(inner.inner, Lp(p=inner.r))
        return _simplify_power(target, inner.r)
    return Dual(inner=inner)


def _simplify_power(inner: SpaceDescriptor, r: float) -> SpaceDescriptor:
    if r == 1:
        return inner
    if isinstance(inner, Lp):
        return Lp(p=inner.p / r)
    if isinstance(inner, Power):
        return _simplify_power(inner.inner, inner.r * r)
    if isinstance(inner, LorentzD) and inner.p / r >= 1:
        return simplify(LorentzD(w=inner.w, p=inner.p / r))
    if isinstance(inner, LorentzPQ) and inner.p / r > 1 and inner.q / r >= 1:
        return simplify(LorentzPQ(p=inner.p / r, q=inner.q / r))
    return Power(inner=inner, r=r)


def _lorentz_as_d(E: SpaceDescriptor):
    """Normed ℓ_{p,q} (q <= p) and d(w,q) as (alpha, q), else None."""
    if isinstance(E, LorentzD):
        return E.w.alpha, E.p
    if isinstance(E, LorentzPQ) and E.normed and not math.isinf(E.q):
        return 1.0 - E.q / E.p, E.q
    return None


def _simplify_multiplier(source: SpaceDescriptor, target: SpaceDescriptor) -> SpaceDescriptor:
    if source == target:
        return Lp(p=INF)
    if isinstance(source, Lp) and isinstance(target, Lp):
        if source.p <= target.p:
            return Lp(p=INF)
        inv = 1.0 / target.p - (0.0 if math.isinf(source.p) else 1.0 / source.p)
        return Lp(p=1.0 / inv)
    if isinstance(target, Lp) and target.p == 1:
        return _simplify_dual(source)
    if isinstance(source, Lp) and math.isinf(source.p):
        return target
    if isinstance(target, Lp) and math.isinf(target.p):
        return Lp(p=INF)
    if isinstance(source, Dual) and isinstance(target, Dual):
        return _simplify_multiplier(target.inner, source.inner)
    if isinstance(source, Dual) and isinstance(target, Lp):
        return _simplify_multiplier(Lp(p=conjugate(target.p)), source.inner)
    if isinstance(source, Lp) and source.p == 2:
        lorentz = _lorentz_as_d(target)
        if lorentz is not None:
            alpha, q = lorentz
            if q >= 2:
                return Lp(p=INF)
            return simplify(
                LorentzD(w=WeightRule(alpha=2.0 * alpha / (2.0 - q)), p=2.0 * q / (2.0 - q))
            )
    return Multiplier(source=source, target=target)


# Attestations


def attestation(E: SpaceDescriptor) -> Attestation:
    """Analytic convexity/concavity exponents and the 2-concavity constant."""
    return _attest(simplify(E))


def _attest(E: SpaceDescriptor) -> Attestation:
    if isinstance(E, Lp):
        return Attestation(convex=E.p, concave=E.p, m2=1.0 if E.p <= 2 else None)
    if isinstance(E, LorentzPQ):
        concave = 2.0 if (E.p < 2 and E.q <= 2) else max(E.p, E.q)
        return Attestation(convex=E.q if E.normed else 0.0, concave=concave)
    if isinstance(E, LorentzD):
        if E.p <= 2:
            concave = 2.0
        else:
            concave = E.p if E.w.alpha == 0 else INF
        return Attestation(convex=E.p, concave=concave)
    if isinstance(E, Orlicz):
        a = E.phi.params
        if E.phi.family == OrliczFamily.POWLOG:
            # t^{a/2}·log(e + √t) is concave when 8a² - 12a + 1 <= 0
            concave = 2.0 if a[0] <= POWLOG_CONCAVE_LIMIT else INF
        else:
            concave = 2.0 if a[1] <= 2 else INF
        return Attestation(convex=1.0, concave=concave)
    if isinstance(E, Marcinkiewicz):
        return Attestation(convex=1.0, concave=INF)
    if isinstance(E, Dual):
        inner = _attest(E.inner)
        if not inner.normed:
            raise InvalidDescriptor(f"Köthe dual of the quasi-normed space {E.inner} is not supported")
        return Attestation(convex=conjugate(inner.concave), concave=conjugate(inner.convex))
    if isinstance(E, Power):
        inner = _attest(E.inner)
        return Attestation(convex=inner.convex / E.r, concave=inner.concave / E.r)
    if isinstance(E, Multiplier):
        target = _attest(E.target)
        convex = target.convex
        # M(ℓ_r, F) is r-convex for r-concave normed F
        if isinstance(E.source, Lp) and target.normed and target.concave <= E.source.p:
            convex = max(convex, E.source.p)
        return Attestation(convex=convex, concave=INF)
    raise InvalidDescriptor(f"Unknown descriptor {E!r}")


def check_power(inner: SpaceDescriptor, r: float) -> None:
    """Power(inner, r) is legal iff inner is attested max(1, r)-convex."""
    convex = attestation(inner).convex
    if convex < max(1.0, r):
        raise InvalidDescriptor(
            f"power({inner}, {r}) needs a max(1, r)-convex space; "
            f"{inner} is only attested {convex}-convex"
        )


def is_quasi_normed(E: SpaceDescriptor) -> bool:
    return not attestation(E).normed


# Norms


def _scaled_sum_norm(star: np.ndarray, coefficients: np.ndarray, q: float) -> float:
    top = star[0]
    if top == 0:
        return 0.0
    return float(top * np.sum(coefficients * (star / top) ** q) ** (1.0 / q))


def lp_norm(p: float, x: np.ndarray) -> float:
    a = np.abs(x)
    top = float(a.max())
    if top == 0:
        return 0.0
    if math.isinf(p):
        return top
    if p == 1:
        return float(a.sum())
    return float(top * np.sum((a / top) ** p) ** (1.0 / p))


def orlicz_norm(phi: OrliczFunction, x: np.ndarray) -> float:
    """Luxemburg gauge inf{ρ > 0 : Σ φ(|x_i|/ρ) <= 1} by bisection."""
    from .numerics import bisect

    star = rearrange(x)
    top = float(star[0])
    if top == 0:
        return 0.0
    if phi.family == OrliczFamily.POWER:
        return lp_norm(phi.params[0], star)
    support = star[star > 0]

    def excess(rho: float) -> float:
        return float(np.sum(phi(support / rho))) - 1.0

    return bisect(excess, top, support.size * top, tol=1e-13 * top) if support.size > 1 else top


def marcinkiewicz_weights(E: Marcinkiewicz, n: int) -> np.ndarray:
    """λ(1), ..., λ(n) for a Marcinkiewicz rule."""
    if E.exponent is not None:
        return np.arange(1, n + 1, dtype=float) ** E.exponent
    return fundamental_sequence(E.base, n)


def _base_norm(E: SpaceDescriptor, x: np.ndarray) -> float:
    if isinstance(E, Lp):
        return lp_norm(E.p, x)
    if isinstance(E, LorentzPQ):
        star = rearrange(x)
        k = np.arange(1, star.size + 1, dtype=float)
        if math.isinf(E.q):
            return float(np.max(k ** (1.0 / E.p) * star))
        return _scaled_sum_norm(star, k ** (E.q / E.p - 1.0), E.q)
    if isinstance(E, LorentzD):
        star = rearrange(x)
        return _scaled_sum_norm(star, E.w.weights(star.size), E.p)
    if isinstance(E, Orlicz):
        return orlicz_norm(E.phi, x)
    if isinstance(E, Marcinkiewicz):
        means = cesaro_mean(x)
        return float(np.max(means * marcinkiewicz_weights(E, means.size)))
    raise InvalidDescriptor(f"{E} is not a base catalog space")


def evaluator(E: SpaceDescriptor) -> Evaluator:
    """A float-valued norm function for E, simplified once up front."""
    simple = simplify(E)
    if isinstance(simple, (Lp, LorentzPQ, LorentzD, Orlicz, Marcinkiewicz)):
        return lambda x: _base_norm(simple, np.asarray(x, dtype=float))
    return lambda x: norm(simple, x).value


def norm(E: SpaceDescriptor, x: ArrayLike) -> NormResult:
    """‖x‖_{E_n} with its certification."""
    arr = as_array(x)
    simple = simplify(E)
    if isinstance(simple, (Lp, LorentzPQ, LorentzD, Orlicz, Marcinkiewicz)):
        return NormResult.exact(_base_norm(simple, arr))

    from . import duality

    if isinstance(simple, Dual):
        return duality.kothe_dual_norm(simple.inner, arr)
    if isinstance(simple, Power):
        return duality.power_norm(simple.inner, simple.r, arr)
    bounds = duality.multiplier_norm(simple.source, simple.target, arr)
    if bounds.lower == bounds.upper:
        return NormResult.exact(bounds.lower)
    return NormResult.numerical(bounds.lower, tolerance=max(bounds.gap, 1e-12))


# Fundamental functions


def fundamental(E: SpaceDescriptor, n: int) -> NormResult:
    """λ_E(n) = ‖Σ_{i<=n} e_i‖_E."""
    if n < 1:
        raise ValueError(f"Invalid dimension n={n}: must be positive")
    simple = simplify(E)
    if isinstance(simple, Multiplier):
        return norm(simple, np.ones(n))
    return NormResult.exact(float(fundamental_sequence(simple, n)[-1]))


@lru_cache(maxsize=256)
def _cached_sequence(E: SpaceDescriptor, n: int) -> tuple:
    return tuple(_fundamental_sequence(E, n))


def fundamental_sequence(E: SpaceDescriptor, n: int) -> np.ndarray:
    """λ_E(1), ..., λ_E(n)."""
    return np.asarray(_cached_sequence(simplify(E), n))


def _fundamental_sequence(E: SpaceDescriptor, n: int) -> np.ndarray:
    k = np.arange(1, n + 1, dtype=float)
    if isinstance(E, Lp):
        return np.ones(n) if math.isinf(E.p) else k ** (1.0 / E.p)
    if isinstance(E, LorentzPQ):
        if math.isinf(E.q):
            return k ** (1.0 / E.p)
        return np.cumsum(k ** (E.q / E.p - 1.0)) ** (1.0 / E.q)
    if isinstance(E, LorentzD):
        return np.cumsum(E.w.weights(n)) ** (1.0 / E.p)
    if isinstance(E, Orlicz):
        return np.array([1.0 / E.phi.inverse(1.0 / j) for j in range(1, n + 1)])
    if isinstance(E, Marcinkiewicz):
        return np.maximum.accumulate(marcinkiewicz_weights(E, n))
    if isinstance(E, Dual):
        return k / fundamental_sequence(E.inner, n)
    if isinstance(E, Power):
        return fundamental_sequence(E.inner, n) ** E.r
    return np.array([norm(E, np.ones(j)).value for j in range(1, n + 1)])


# Orlicz validation


def validate_orlicz(phi: OrliczFunction, grid: List[float], rtol: float = 1e-10) -> ValidationReport:
    """Advisory midpoint tests of convexity of φ and concavity of φ(√t) on a grid."""
    points = np.asarray(grid, dtype=float)
    if points.size == 0:
        raise EmptyGrid("validation grid is empty")
    if np.any(points <= 0) or np.any(np.diff(points) < 0):
        raise ValueError("Invalid grid: points must be positive and sorted")

    a, b = np.meshgrid(points, points, indexing="ij")
    upper = np.triu_indices(points.size, k=1)
    a, b = a[upper], b[upper]
    mid = 0.5 * (a + b)

    chord = 0.5 * (phi(a) + phi(b))
    convex = bool(np.all(phi(mid) <= chord * (1 + rtol)))

    def root(t: np.ndarray) -> np.ndarray:
        return phi(np.sqrt(t))

    chord_root = 0.5 * (root(a) + root(b))
    sqrt_concave = bool(np.all(root(mid) >= chord_root * (1 - rtol)))

    normalized = float(phi(0.0)) == 0.0 and abs(float(phi(1.0)) - 1.0) <= 1e-12
    values = phi(points)
    recovered = phi(np.array([phi.inverse(float(s)) for s in values]))
    inverse_consistent = bool(np.all(np.abs(recovered - values) <= 1e-12 * values))

    if not (convex and normalized):
        logger.warning("Orlicz function %s failed validation on the grid", phi.label())
    return ValidationReport(
        convex=convex,
        sqrt_concave=sqrt_concave,
        normalized=normalized,
        inverse_consistent=inverse_consistent,
        grid_size=int(points.size),
    )


# Supporting functionals


def _scatter(values_sorted: np.ndarray, x: np.ndarray) -> np.ndarray:
    order = rearrangement_order(x)
    g = np.zeros_like(x)
    g[order] = values_sorted
    return g * np.sign(x)


def supporting_functional(E: SpaceDescriptor, x: ArrayLike) -> np.ndarray:
    """A norming functional g with <g, x> = ‖x‖_E, a subgradient of the norm at x.

    Analytic for catalog spaces and powers of them; central finite differences
    otherwise. At non-smooth points one valid subgradient is returned.
    """
    arr = as_array(x)
    if not np.any(arr):
        return np.zeros_like(arr)
    simple = simplify(E)
    if isinstance(simple, Lp):
        a = np.abs(arr)
        if simple.p == 1:
            return np.sign(arr)
        if math.isinf(simple.p):
            g = np.zeros_like(arr)
            k = int(np.argmax(a))
            g[k] = np.sign(arr[k])
            return g
        value = lp_norm(simple.p, arr)
        return np.sign(arr) * (a / value) ** (simple.p - 1.0)
    if isinstance(simple, (LorentzPQ, LorentzD)):
        star = rearrange(arr)
        k = np.arange(1, star.size + 1, dtype=float)
        if isinstance(simple, LorentzPQ):
            if math.isinf(simple.q):
                j = int(np.argmax(k ** (1.0 / simple.p) * star))
                values = np.zeros_like(star)
                values[j] = (j + 1) ** (1.0 / simple.p)
                return _scatter(values, arr)
            coefficients, q = k ** (simple.q / simple.p - 1.0), simple.q
        else:
            coefficients, q = simple.w.weights(star.size), simple.p
        value = _base_norm(simple, arr)
        return _scatter(coefficients * (star / value) ** (q - 1.0), arr)
    if isinstance(simple, Orlicz):
        rho = orlicz_norm(simple.phi, arr)
        a = np.abs(arr) / rho
        slope = simple.phi.derivative(a)
        return np.sign(arr) * slope / float(np.sum(slope * a))
    if isinstance(simple, Marcinkiewicz):
        means = cesaro_mean(arr)
        lam = marcinkiewicz_weights(simple, means.size)
        j = int(np.argmax(means * lam))
        values = np.zeros_like(means)
        values[: j + 1] = lam[j] / (j + 1)
        return _scatter(values, arr)
    if isinstance(simple, Power):
        r = simple.r
        u = np.abs(arr) ** (1.0 / r)
        inner = norm(simple.inner, u).value
        g_inner = supporting_functional(simple.inner, u)
        with np.errstate(divide="ignore"):
            chain = np.where(u > 0, np.abs(arr) ** (1.0 / r - 1.0), 0.0)
        return np.sign(arr) * inner ** (r - 1.0) * g_inner * chain
    return _finite_difference(evaluator(simple), arr)


def _finite_difference(f: Evaluator, x: np.ndarray) -> np.ndarray:
    h = 1e-6 * float(np.max(np.abs(x)))
    g = np.zeros_like(x)
    for i in range(x.size):
        step = np.zeros_like(x)
        step[i] = h
        g[i] = (f(x + step) - f(x - step)) / (2.0 * h)
    return g
