"""s-numbers of finite operators and the Weyl/eigenvalue verification suite."""

import logging
import math
from typing import Iterable, List, NamedTuple, Optional, Union

import numpy as np

from .duality import m2e_norm, multiplier_upper
from .exceptions import (
    ConvergenceFailure,
    DimensionMismatch,
    InvalidParameter,
    MissingAttestation,
    NonFinite,
    ParameterOrder,
)
from .models.descriptors import Lp, SpaceDescriptor, WeightRule
from .models.operators import Matrix
from .models.results import (
    BoundPair,
    Certification,
    Report,
    SNumberKind,
    SNumberReport,
    SNumberRow,
)
from .models.vector import ArrayLike, as_array
from .numerics import jacobi_svd
from .spaces import attestation, fundamental, norm, simplify
from .summing import summing_constant, summing_upper_main

logger = logging.getLogger(__name__)

WEYL_CONSTANT = 2.0 * math.sqrt(2.0 * math.e)
RELATIVE = 1e-9

MatrixLike = Union[Matrix, ArrayLike]


def _as_matrix(A: MatrixLike) -> np.ndarray:
    arr = A.to_array() if isinstance(A, Matrix) else np.atleast_2d(np.asarray(A, dtype=float))
    if arr.ndim != 2 or arr.size == 0:
        raise DimensionMismatch(f"Invalid matrix shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NonFinite("Matrix entries must be finite")
    return arr


def _square(A: MatrixLike) -> np.ndarray:
    arr = _as_matrix(A)
    if arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"Expected a square matrix, got shape {arr.shape}")
    return arr


# Spectral kernels


def svd_values(A: MatrixLike) -> np.ndarray:
    """Singular values, non-increasing."""
    return jacobi_svd(_as_matrix(A))[1]


def hessenberg(A: MatrixLike) -> np.ndarray:
    """Upper Hessenberg form by Householder reflections (similar to A)."""
    H = np.array(_square(A), dtype=float, copy=True)
    n = H.shape[0]
    for k in range(n - 2):
        x = H[k + 1 :, k]
        length = float(np.linalg.norm(x))
        if length == 0.0:
            continue
        v = x.copy()
        v[0] += math.copysign(length, x[0]) if x[0] != 0 else length
        v /= np.linalg.norm(v)
        H[k + 1 :, :] -= 2.0 * np.outer(v, v @ H[k + 1 :, :])
        H[:, k + 1 :] -= 2.0 * np.outer(H[:, k + 1 :] @ v, v)
        H[k + 2 :, k] = 0.0
    return H


def _wilkinson_shift(block: np.ndarray) -> complex:
    a, b = block[-2, -2], block[-2, -1]
    c, d = block[-1, -2], block[-1, -1]
    half_trace = 0.5 * (a + d)
    root = np.sqrt(complex(half_trace * half_trace - (a * d - b * c)))
    first, second = half_trace + root, half_trace - root
    return first if abs(first - d) <= abs(second - d) else second


def _givens(f: complex, g: complex) -> np.ndarray:
    """Unitary G with G @ (f, g) = (r, 0)."""
    r = math.hypot(abs(f), abs(g))
    if r == 0.0:
        return np.eye(2, dtype=complex)
    c, s = f / r, g / r
    return np.array([[c.conjugate(), s.conjugate()], [-s, c]], dtype=complex)


def _shifted_qr_step(block: np.ndarray, shift: complex) -> np.ndarray:
    """R·Q + shift·I for QR = block - shift·I, with block upper Hessenberg."""
    M = block - shift * np.eye(block.shape[0])
    rotations = []
    for k in range(M.shape[0] - 1):
        G = _givens(M[k, k], M[k + 1, k])
        M[k : k + 2, k:] = G @ M[k : k + 2, k:]
        M[k + 1, k] = 0.0
        rotations.append(G)
    for k, G in enumerate(rotations):
        M[: k + 2, k : k + 2] = M[: k + 2, k : k + 2] @ G.conj().T
    return M + shift * np.eye(block.shape[0])


def eigenvalues(A: MatrixLike) -> np.ndarray:
    """Eigenvalues by Hessenberg reduction and single-shift complex QR.

    Sorted by descending modulus, ties by descending real part. Raises
    ConvergenceFailure after 10·n² QR steps.
    """
    H = hessenberg(A).astype(complex)
    n = H.shape[0]
    eps = np.finfo(float).eps
    found: List[complex] = []
    cap = 10 * n * n
    steps = 0
    since_deflation = 0
    hi = n - 1
    while hi >= 0:
        if hi == 0:
            found.append(H[0, 0])
            break
        lo = hi
        while lo > 0 and abs(H[lo, lo - 1]) > eps * (abs(H[lo - 1, lo - 1]) + abs(H[lo, lo])):
            lo -= 1
        if lo == hi:
            found.append(H[hi, hi])
            H[hi, hi - 1] = 0.0
            hi -= 1
            since_deflation = 0
            continue
        if steps >= cap:
            raise ConvergenceFailure(f"shifted QR did not converge in {cap} steps")
        steps += 1
        since_deflation += 1
        if lo > 0:
            H[lo, lo - 1] = 0.0
        block = H[lo : hi + 1, lo : hi + 1]
        if since_deflation % 11 == 10:
            # exceptional shift
            shift = block[-1, -1] + abs(block[-1, -2]) * (0.75 + 0.5j)
        else:
            shift = _wilkinson_shift(block)
        H[lo : hi + 1, lo : hi + 1] = _shifted_qr_step(block, shift)
    logger.debug("shifted QR: %d steps for n=%d", steps, n)
    values = np.asarray(found, dtype=complex)
    order = np.lexsort((-values.real, -np.abs(values)))
    return values[order]


def eig_moduli(A: MatrixLike) -> np.ndarray:
    """|λ_k(A)| sorted non-increasingly."""
    return np.abs(eigenvalues(A))


# Approximation numbers


def approx_exact_lp(n: int, k: int, p: float, q: float) -> float:
    """a_k(id: ℓ_qⁿ → ℓ_pⁿ) = (n - k + 1)^{1/p - 1/q}."""
    if not 1 <= k <= n:
        raise InvalidParameter(f"Invalid index k={k}: need 1 <= k <= n={n}")
    if p >= q:
        raise ParameterOrder(f"need p < q, got p={p}, q={q}")
    if p < 1:
        raise InvalidParameter(f"Invalid exponent p={p}: need p >= 1")
    exponent = 1.0 / p - (0.0 if math.isinf(q) else 1.0 / q)
    return float((n - k + 1) ** exponent)


def _require_two_concave(E: SpaceDescriptor) -> None:
    if not attestation(E).two_concave:
        raise MissingAttestation(f"{E} is not attested 2-concave")


def approx_bounds(E: SpaceDescriptor, n: int, k: int) -> BoundPair:
    """Bounds on a_k(id: E_n → ℓ₂ⁿ) from the rank-(k-1) truncation argument.

    The upper member is ‖Σ_{i<=n-k+1} e_i‖_{M(ℓ₂,E)}; the lower member is the
    asymptotic reference λ_E(n-k+1)/√(n-k+1) and is tagged as such.
    """
    if not 1 <= k <= n:
        raise InvalidParameter(f"Invalid index k={k}: need 1 <= k <= n={n}")
    _require_two_concave(E)
    m = n - k + 1
    upper, exact = multiplier_upper(Lp(p=2.0), E, np.ones(m))
    reference = fundamental(E, m).value / math.sqrt(m)
    checks = {}
    simple = simplify(E)
    if isinstance(simple, Lp) and simple.p < 2:
        value = approx_exact_lp(n, k, simple.p, 2.0)
        checks["brackets_exact"] = abs(upper - value) <= RELATIVE * value
    if not exact:
        logger.warning("a_%d bound for %s (n=%d) is not a closed form", k, E, n)
    return BoundPair(
        lower=min(reference, upper),
        upper=upper,
        certification=Certification.REFERENCE,
        checks=checks,
        note="lower is the asymptotic reference λ_E(m)/√m, m = n-k+1",
    )


def approximation_report(E: SpaceDescriptor, n: int, ks: Optional[Iterable[int]] = None) -> SNumberReport:
    """approx_bounds for every k in `ks` (all k by default), with ℓ_p exact values."""
    simple = simplify(E)
    report = SNumberReport(kind=SNumberKind.APPROXIMATION, n=n)
    for k in ks if ks is not None else range(1, n + 1):
        exact = None
        if isinstance(simple, Lp) and simple.p < 2:
            exact = approx_exact_lp(n, k, simple.p, 2.0)
        report.rows.append(SNumberRow(k=k, bounds=approx_bounds(E, n, k), exact=exact))
    return report


class LorentzReference(NamedTuple):
    value: float
    regularity: float


def lorentz_d_reference(w: WeightRule, p: float, n: int, k: int) -> LorentzReference:
    """(n-k+1)^{1/p-1/2}·w_{n-k+1}^{1/p} and the infimum of the regularity ratio up to n-k+1.

    The asymptotic for d(w,p) only holds when the regularity ratio stays bounded
    below, so callers should check `regularity` before relying on `value`.
    """
    if not 1 <= k <= n:
        raise InvalidParameter(f"Invalid index k={k}: need 1 <= k <= n={n}")
    m = n - k + 1
    weight = float(w.weights(m)[-1])
    value = m ** (1.0 / p - 0.5) * weight ** (1.0 / p)
    regularity = min(w.regularity_ratio(j, p) for j in range(1, m + 1))
    return LorentzReference(value=value, regularity=regularity)


# Weyl and eigenvalue checks


def weyl_check(A: MatrixLike, F: SpaceDescriptor) -> Report:
    """Multiplicative Weyl inequality and its F-norm form ‖λ*‖_F <= 2√(2e)‖s‖_F."""
    arr = _square(A)
    s = svd_values(arr)
    moduli = eig_moduli(arr)
    report = Report(name=f"weyl {F} n={arr.shape[0]}")
    lambda_products = np.cumprod(moduli)
    s_products = np.cumprod(s)
    for m, (lhs, rhs) in enumerate(zip(lambda_products, s_products), start=1):
        report.add(f"product_{m}", float(lhs), float(rhs * (1 + RELATIVE)), tol=1e-12 * float(s[0]) ** m)
    lhs = norm(F, moduli).value
    rhs = WEYL_CONSTANT * norm(F, s).value
    report.add("norm_form", lhs, rhs, tol=RELATIVE)
    return report


def eigenvalue_multiplier_check(
    sigma: ArrayLike, R: MatrixLike, E: SpaceDescriptor, tol: float = 1e-6
) -> Report:
    """For T = diag(σ)·R with ‖R‖ = 1: ‖s(T)‖_{M(ℓ₂,E)} <= √2·M₍₂₎(E)·‖σ‖_E."""
    sig = as_array(sigma)
    R_arr = _square(R)
    if R_arr.shape[0] != sig.size:
        raise DimensionMismatch(f"sigma has {sig.size} entries, R is {R_arr.shape}")
    _require_two_concave(E)
    top = float(svd_values(R_arr)[0])
    if top > 0:
        R_arr = R_arr / top
    T = sig[:, None] * R_arr
    s = svd_values(T)
    moduli = eig_moduli(T)

    s_norm = m2e_norm(E, s).value
    bound = summing_upper_main(E) * norm(E, sig).value
    report = Report(name=f"eigenvalue multiplier {E} n={sig.size}")
    report.values.update({"s_norm": s_norm, "bound": bound})
    report.add("singular_values", s_norm, bound, tol=tol)
    report.add("eigenvalues", m2e_norm(E, moduli).value, WEYL_CONSTANT * s_norm, tol=tol)
    return report


def gelfand_number_bounds(A: MatrixLike, F: SpaceDescriptor, pi_value: float) -> SNumberReport:
    """Gelfand numbers c_k(A) against C⁻¹·λ_F(n-k+1)/pi_value, C = 2√(2e)·c₂^F.

    `pi_value` must bound π_{F,2}(A⁻¹) from above. Gelfand numbers between
    Euclidean spaces are singular values; each row carries the implied lower
    bound in its note and a pass flag.
    """
    if not pi_value > 0:
        raise InvalidParameter(f"Invalid summing norm bound {pi_value}: must be positive")
    arr = _square(A)
    n = arr.shape[0]
    C = WEYL_CONSTANT * summing_constant(F, 2.0)
    gelfand = svd_values(arr)
    report = SNumberReport(kind=SNumberKind.GELFAND_LOWER, n=n)
    for k in range(1, n + 1):
        implied = fundamental(F, n - k + 1).value / (C * pi_value)
        value = float(gelfand[k - 1])
        report.rows.append(
            SNumberRow(
                k=k,
                exact=value,
                bounds=BoundPair(
                    lower=min(implied, value),
                    upper=value,
                    certification=Certification.EXACT,
                    checks={"c_k>=bound": implied <= value * (1 + RELATIVE)},
                    note=f"implied {implied:.12g}",
                ),
            )
        )
    return report


def pi_identity_lower(
    F: SpaceDescriptor,
    n: int,
    pi_value: float,
    A: Optional[MatrixLike] = None,
) -> Report:
    """Non-contradiction of π_{F,2}(id) >= C⁻¹·λ_F(n) and the Gelfand-number bound.

    A defaults to the identity; the Gelfand rows come from `gelfand_number_bounds`.
    """
    if n < 1:
        raise DimensionMismatch(f"Invalid dimension n={n}: must be positive")
    if not pi_value > 0:
        raise InvalidParameter(f"Invalid summing norm bound {pi_value}: must be positive")
    arr = np.eye(n) if A is None else _square(A)
    if arr.shape[0] != n:
        raise DimensionMismatch(f"matrix is {arr.shape}, expected n={n}")
    C = WEYL_CONSTANT * summing_constant(F, 2.0)
    lam = fundamental(F, n).value
    report = Report(name=f"pi identity {F} n={n}")
    report.values.update({"constant": C, "implied_fundamental_upper": C * pi_value})
    if A is None:
        report.add("fundamental", lam, C * pi_value, tol=RELATIVE * lam)
    for row in gelfand_number_bounds(arr, F, pi_value).rows:
        implied = fundamental(F, n - row.k + 1).value / (C * pi_value)
        report.add(f"gelfand_{row.k}", implied, row.exact, tol=RELATIVE * implied)
    return report


def weyl_number_bounds(A: MatrixLike, F: SpaceDescriptor, pi_value: float) -> SNumberReport:
    """König-type bounds x_k(T) <= c₂^F·π_{F,2}(T)/λ_F(k) on Euclidean spaces.

    Weyl numbers of a Hilbert space operator are its singular values; each row
    carries the bound as `upper` and a pass flag.
    """
    arr = _as_matrix(A)
    s = svd_values(arr)
    n = s.size
    constant = summing_constant(F, 2.0)
    report = SNumberReport(kind=SNumberKind.WEYL_PROXY, n=n)
    for k in range(1, n + 1):
        bound = constant * pi_value / fundamental(F, k).value
        value = float(s[k - 1])
        report.rows.append(
            SNumberRow(
                k=k,
                exact=value,
                bounds=BoundPair(
                    lower=min(value, bound),
                    upper=bound,
                    certification=Certification.EXACT,
                    checks={"x_k<=bound": value <= bound * (1 + RELATIVE)},
                ),
            )
        )
    return report
