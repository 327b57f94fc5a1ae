"""Shared numerical kernels.

Bisection, golden-section search, projection onto the monotone cone
(pool-adjacent-violators), projected subgradient descent, one-sided Jacobi
singular values and the seeded counter-based random streams used by every
randomized search.
"""

import logging
import math
from typing import Callable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .exceptions import ConvergenceFailure, MaxIterations, NoBracket
from .models.experiment import SolverConfig
from .models.vector import ArrayLike, as_array

logger = logging.getLogger(__name__)

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def bisect(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-12,
    callback: Optional[Callable[[float, float], None]] = None,
) -> float:
    """Root of a monotone f on [lo, hi].

    Stops when the bracket is narrower than `tol` or f hits zero exactly, so at
    most ceil(log2((hi - lo) / tol)) interior evaluations are made. `callback`
    receives the bracket after every halving.
    """
    if not lo < hi:
        raise NoBracket(f"empty interval [{lo}, {hi}]")
    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0:
        return lo
    if f_hi == 0:
        return hi
    if (f_lo > 0) == (f_hi > 0):
        raise NoBracket(f"f({lo})={f_lo} and f({hi})={f_hi} have the same sign")

    steps = max(0, math.ceil(math.log2((hi - lo) / tol)))
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        f_mid = f(mid)
        if f_mid == 0:
            return mid
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
        if callback is not None:
            callback(lo, hi)
        if hi - lo <= tol:
            break
    return 0.5 * (lo + hi)


def golden_section(
    f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-12
) -> Tuple[float, float]:
    """Minimize a unimodal f on [lo, hi]; returns (argmin, min)."""
    a, b = lo, hi
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol * max(1.0, abs(a) + abs(b)):
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
    candidates = [(fc, c), (fd, d), (f(lo), lo), (f(hi), hi)]
    value, point = min(candidates)
    return point, value


def project_monotone(
    y: ArrayLike,
    weights: Optional[np.ndarray] = None,
    nonnegative: bool = True,
) -> np.ndarray:
    """Weighted least-squares projection onto the non-increasing cone.

    Pool-adjacent-violators; with `nonnegative` the fit is clipped at zero,
    which is the projection onto the non-increasing non-negative cone.
    """
    values = as_array(y)
    w = np.ones_like(values) if weights is None else np.asarray(weights, dtype=float)
    means: List[float] = []
    masses: List[float] = []
    counts: List[int] = []
    for value, mass in zip(values, w):
        means.append(float(value))
        masses.append(float(mass))
        counts.append(1)
        while len(means) > 1 and means[-2] < means[-1]:
            m2, w2, c2 = means.pop(), masses.pop(), counts.pop()
            m1, w1, c1 = means.pop(), masses.pop(), counts.pop()
            total = w1 + w2
            means.append((w1 * m1 + w2 * m2) / total)
            masses.append(total)
            counts.append(c1 + c2)
    fitted = np.repeat(np.asarray(means), counts)
    if nonnegative:
        fitted = np.maximum(fitted, 0.0)
    return fitted


def project_cone_slice(z: np.ndarray, a: np.ndarray, tol: float = 1e-14) -> np.ndarray:
    """Project z onto {y non-increasing, y >= 0, <a, y> = 1} for a >= 0, a != 0.

    The projection is Π(z + μ a) with Π the monotone-cone projection and μ the
    root of <a, Π(z + μ a)> = 1.
    """
    def pairing(mu: float) -> float:
        return float(a @ project_monotone(z + mu * a)) - 1.0

    scale = float(a @ a)
    lo, hi = -1.0, 1.0
    while pairing(lo) > 0:
        lo *= 2.0
    while pairing(hi) < 0:
        hi = 2.0 * hi + 1.0 / scale
    mu = bisect(pairing, lo, hi, tol=tol * max(1.0, hi - lo))
    y = project_monotone(z + mu * a)
    paired = float(a @ y)
    return y / paired if paired > 0 else y


class Minimum(NamedTuple):
    """Outcome of a projected subgradient run."""

    point: np.ndarray
    value: float
    iterations: int
    converged: bool


def minimize_convex(
    objective: Callable[[np.ndarray], float],
    subgradient: Callable[[np.ndarray], np.ndarray],
    project: Callable[[np.ndarray], np.ndarray],
    starts: Sequence[np.ndarray],
    config: Optional[SolverConfig] = None,
    strict: bool = False,
) -> Minimum:
    """Projected subgradient descent from several starts.

    Steps are c/sqrt(k) with c calibrated to the size of the start; c is
    halved whenever a window of iterations brings no relative improvement.
    Returns the best point seen. With `strict`, running out of iterations
    before the improvement falls below the tolerance raises MaxIterations
    carrying that best point.
    """
    config = config or SolverConfig()
    best: Optional[Minimum] = None
    window = max(10, config.max_iterations // 20)
    for start in starts:
        x = project(np.asarray(start, dtype=float))
        value = objective(x)
        run_best_x, run_best = x, value
        scale = max(float(np.linalg.norm(x)), 1e-12)
        c = 0.5 * scale
        last_window_best = value
        converged = False
        k = 0
        for k in range(1, config.max_iterations + 1):
            g = subgradient(x)
            g_norm = float(np.linalg.norm(g))
            if g_norm == 0.0:
                converged = True
                break
            x = project(x - (c / math.sqrt(k)) * g / g_norm)
            value = objective(x)
            if value < run_best:
                run_best_x, run_best = x, value
            if k % window == 0:
                if last_window_best - run_best <= config.tolerance * max(run_best, 1e-300):
                    c *= 0.5
                    x = run_best_x
                    if c < config.tolerance * scale:
                        converged = True
                        break
                last_window_best = run_best
        logger.debug("subgradient run: value=%.12g after %d iterations", run_best, k)
        result = Minimum(run_best_x, run_best, k, converged)
        if best is None or result.value < best.value:
            best = result
    assert best is not None
    if not best.converged:
        if strict:
            raise MaxIterations(
                f"no convergence within {config.max_iterations} iterations", result=best
            )
        logger.warning(
            "projected subgradient hit the iteration cap (%d); returning best value %.12g",
            config.max_iterations,
            best.value,
        )
    return best


def rng_stream(seed: int, stream: int = 0) -> np.random.Generator:
    """Counter-based generator determined by (seed, stream)."""
    return np.random.Generator(
        np.random.Philox(np.random.SeedSequence(seed, spawn_key=(stream,)))
    )


def jacobi_svd(
    A: np.ndarray, tol: float = 1e-14, max_sweeps: int = 80
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """One-sided Jacobi SVD: returns (U, s, Vt) with s non-increasing.

    Column pairs are rotated until every pair is orthogonal to `tol`
    relative to their norms; wide matrices are handled through the transpose.
    """
    M = np.array(A, dtype=float, copy=True)
    if M.ndim != 2 or M.size == 0:
        raise ValueError(f"Invalid matrix shape {M.shape}")
    if M.shape[0] < M.shape[1]:
        U, s, Vt = jacobi_svd(M.T, tol, max_sweeps)
        return Vt.T, s, U.T

    n = M.shape[1]
    V = np.eye(n)
    for sweep in range(max_sweeps):
        rotated = False
        for i in range(n - 1):
            for j in range(i + 1, n):
                alpha = float(M[:, i] @ M[:, i])
                beta = float(M[:, j] @ M[:, j])
                gamma = float(M[:, i] @ M[:, j])
                if gamma == 0.0 or abs(gamma) <= tol * math.sqrt(alpha * beta):
                    continue
                rotated = True
                zeta = (beta - alpha) / (2.0 * gamma)
                t = math.copysign(1.0, zeta) / (abs(zeta) + math.sqrt(1.0 + zeta * zeta))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = c * t
                Mi, Mj = M[:, i].copy(), M[:, j]
                M[:, i] = c * Mi - s * Mj
                M[:, j] = s * Mi + c * Mj
                Vi, Vj = V[:, i].copy(), V[:, j]
                V[:, i] = c * Vi - s * Vj
                V[:, j] = s * Vi + c * Vj
        if not rotated:
            logger.debug("jacobi svd converged after %d sweeps", sweep + 1)
            break
    else:
        raise ConvergenceFailure(f"Jacobi SVD did not converge in {max_sweeps} sweeps")

    values = np.linalg.norm(M, axis=0)
    order = np.argsort(-values, kind="stable")
    values, M, V = values[order], M[:, order], V[:, order]
    U = np.zeros_like(M)
    nonzero = values > 0
    U[:, nonzero] = M[:, nonzero] / values[nonzero]
    return U, values, V.T
