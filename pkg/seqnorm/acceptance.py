"""Acceptance suite run by `seqnorm report-all`.

Each criterion returns a Report whose checks are inequalities with their
tolerances. `quick=True` shrinks the sweeps but keeps every check.
"""

import logging
import math
from typing import Callable, Dict, List, Sequence

import numpy as np

from .duality import identity_norm, kothe_dual_norm, m2e_norm, multiplier_norm
from .interpolation import k_functional, k_functional_l1_linf, power_equivalence_ratio
from .models.descriptors import LorentzD, LorentzPQ, Lp, Marcinkiewicz, Multiplier
from .models.experiment import SolverConfig
from .models.operators import FiniteOperator, VectorFamily
from .models.results import Certification, Report
from .numerics import project_monotone, rng_stream
from .snumbers import approx_bounds, eigenvalue_multiplier_check, weyl_check
from .spaces import fundamental, is_quasi_normed, norm, simplify
from .summing import coordinate_family, summing_lower, summing_upper_main
from .utils.expressions import parse

logger = logging.getLogger(__name__)

PIETSCH_EXPONENTS = (1.0, 4.0 / 3.0, 1.5)
SANDWICH_SPACES = ("lp(1)", "lp(4/3)", "lorentz(4/3,2)", "dwp(pow(1/2),3/2)", "orlicz(power(3/2))")
LORENTZ_PAIRS = ((4.0 / 3.0, 1.0), (4.0 / 3.0, 2.0), (1.5, 2.0))
ISOMETRY_SPACES = ("lp(1)", "lp(4/3)", "dwp(pow(1/2),3/2)")
INVARIANT_SPACES = (
    "lp(1)",
    "lp(3/2)",
    "lp(inf)",
    "lorentz(2,1)",
    "lorentz(4/3,2)",
    "dwp(pow(1/2),3/2)",
    "orlicz(power(3/2))",
    "orlicz(powlog(3/2))",
    "marcinkiewicz(pow(1/2))",
)


def _dims(quick: bool) -> Sequence[int]:
    return (4, 8, 16) if quick else (4, 8, 16, 32, 64)


def _relative(report: Report, name: str, value: float, expected: float, rtol: float = 1e-9) -> None:
    report.add(name, abs(value - expected), rtol * abs(expected), detail=f"value={value!r} expected={expected!r}")


def pietsch_tightness(seed: int = 0, quick: bool = False) -> Report:
    """approx_bounds(ℓ_p, n, k).upper = (n-k+1)^{1/p-1/2}."""
    report = Report(name="pietsch tightness", certification=Certification.EXACT)
    for p in PIETSCH_EXPONENTS:
        for n in _dims(quick):
            for k in range(1, n + 1):
                upper = approx_bounds(Lp(p=p), n, k).upper
                _relative(report, f"p={p:.6g} n={n} k={k}", upper, (n - k + 1) ** (1.0 / p - 0.5))
    return report


def fundamental_sandwich(seed: int = 0, quick: bool = False) -> Report:
    """identity_norm(ℓ₂, E, m) / (λ_E(m)/√m) lies in [1, 2]."""
    report = Report(name="fundamental sandwich", certification=Certification.EXACT)
    ms = [2**j for j in range(2, 9)] if quick else range(4, 257)
    for text in SANDWICH_SPACES:
        E = parse(text)
        for m in ms:
            bounds = identity_norm(Lp(p=2.0), E, m)
            reference = fundamental(E, m).value / math.sqrt(m)
            report.add(f"{text} m={m} lower", 1.0 - 1e-9, bounds.lower / reference)
            report.add(f"{text} m={m} upper", bounds.upper / reference, 2.0)
            report.values[f"{text} m={m}"] = bounds.upper / reference
    return report


def lorentz_no_logarithm(seed: int = 0, quick: bool = False) -> Report:
    """approx_bounds(ℓ_{p,q}).upper/(n-k+1)^{1/p-1/2} at k = n/2 varies by at most 2."""
    report = Report(name="lorentz no logarithm", certification=Certification.EXACT)
    dims = (16, 64, 256) if quick else (16, 64, 256, 1024)
    for p, q in LORENTZ_PAIRS:
        E = LorentzPQ(p=p, q=q)
        ratios = []
        for n in dims:
            k = n // 2
            ratios.append(approx_bounds(E, n, k).upper / (n - k + 1) ** (1.0 / p - 0.5))
        report.values[f"{E} min"] = min(ratios)
        report.values[f"{E} max"] = max(ratios)
        report.add(f"{E} spread", max(ratios), 2.0 * min(ratios))
    return report


def orlicz_formula(seed: int = 0, quick: bool = False) -> Report:
    """Orlicz t^{3/2}: upper / (φ⁻¹(1/m)⁻¹·m^{-1/2}) in [1, 2] and equal to the ℓ_{3/2} values."""
    report = Report(name="orlicz formula", certification=Certification.EXACT)
    E = parse("orlicz(power(3/2))")
    phi = E.phi
    for n in _dims(quick):
        for k in range(1, n + 1):
            m = n - k + 1
            upper = approx_bounds(E, n, k).upper
            ratio = upper / (1.0 / phi.inverse(1.0 / m) / math.sqrt(m))
            report.add(f"n={n} k={k} lower", 1.0 - 1e-9, ratio)
            report.add(f"n={n} k={k} upper", ratio, 2.0)
            _relative(report, f"n={n} k={k} lp", upper, approx_bounds(Lp(p=1.5), n, k).upper)
    return report


def main_theorem_sandwich(seed: int = 0, quick: bool = False) -> Report:
    """π_{M(ℓ₂,E),2}(id: E_n → ℓ₂ⁿ) estimates stay in [1, √2·M₍₂₎(E)]."""
    report = Report(name="main theorem sandwich")
    dims = (4, 8) if quick else (4, 8, 16, 32)
    count = 16 if quick else 256
    for text in ("lp(1)", "lp(4/3)"):
        E = parse(text)
        F = simplify(Multiplier(source=Lp(p=2.0), target=E))
        bound = summing_upper_main(E)
        for n in dims:
            T = FiniteOperator.identity(n, domain=E, codomain=Lp(p=2.0))
            coordinates = summing_lower(T, F, 2.0, [coordinate_family(n)]).lower
            rng = rng_stream(seed, 10_000 + n)
            families = [coordinate_family(n)]
            for index in range(count):
                members = int(rng.integers(1, 2 * n + 1))
                families.append(VectorFamily.of(rng.standard_normal((members, n)), label=f"random-{index}"))
            lower = summing_lower(T, F, 2.0, families).lower
            report.add(f"{text} n={n} lower>=1", 1.0 - 1e-9, lower)
            report.add(f"{text} n={n} lower<=bound", lower, bound * (1 + 1e-6))
            if text == "lp(1)":
                _relative(report, f"{text} n={n} coordinates", coordinates, 1.0)
    return report


def multiplier_isometry(seed: int = 0, quick: bool = False) -> Report:
    """m2e_norm(F, x) agrees with the multiplier norm of M(ℓ₂, F)."""
    report = Report(name="multiplier isometry")
    trials = 10 if quick else 50
    config = SolverConfig(seed=seed)
    for index, text in enumerate(ISOMETRY_SPACES):
        F = parse(text)
        rng = rng_stream(seed, 20_000 + index)
        for trial in range(trials):
            x = rng.standard_normal(int(rng.integers(1, 33)))
            value = m2e_norm(F, x).value
            searched = multiplier_norm(Lp(p=2.0), F, x, config, method="search")
            report.add(f"{text} #{trial}", abs(value - searched.lower), 1e-4 * value)
            report.add(f"{text} #{trial} consistent", 0.0 if searched.passed else 1.0, 0.0)
    return report


def k_functional_oracle(seed: int = 0, quick: bool = False) -> Report:
    """The generic splitting solver against the (ℓ₁, ℓ∞) closed form; power equivalence."""
    report = Report(name="k-functional oracle")
    cases = 20 if quick else 200
    rng = rng_stream(seed, 30_000)
    l1, l2, linf = Lp(p=1.0), Lp(p=2.0), Lp(p=math.inf)
    for case in range(cases):
        n = int(rng.integers(1, 101))
        x = rng.standard_normal(n)
        t = float(math.exp(rng.uniform(math.log(0.1), math.log(n + 1.0))))
        exact, _ = k_functional_l1_linf(t, x)
        generic, splitting = k_functional(l1, linf, t, x, method="generic")
        report.add(f"case {case} n={n}", abs(generic.value - exact), 1e-6 * exact)
        report.add(f"case {case} upper", exact, generic.value, 1e-12 * exact)
        report.add(f"case {case} certified", generic.value - generic.tolerance, exact, 1e-12 * exact)
        residual = float(np.max(np.abs(np.asarray(splitting.total()) - x)))
        report.add(f"case {case} splitting", residual, 1e-9 * (1 + float(np.max(np.abs(x)))))
        for E0 in (l1, l2):
            ratio = power_equivalence_ratio(E0, linf, 0.5, t, x)
            report.add(f"case {case} {E0} ratio<=4", ratio, 4.0)
            report.add(f"case {case} {E0} ratio>=1/4", 0.25, ratio)
    return report


def weyl_suite(seed: int = 0, quick: bool = False) -> Report:
    """Multiplicative Weyl inequality and its F-norm form on Gaussian matrices."""
    report = Report(name="weyl suite")
    spaces = (parse("lp(1)"), parse("lorentz(4/3,2)"))
    ensembles = ((8, 20), (16, 5)) if quick else ((8, 200), (16, 50))
    for n, count in ensembles:
        for index in range(count):
            A = rng_stream(seed, 40_000 + 1_000 * n + index).standard_normal((n, n))
            for F in spaces:
                for check in weyl_check(A, F).checks:
                    report.checks.append(check.model_copy(update={"name": f"n={n} #{index} {F} {check.name}"}))
    return report


def eigenvalue_multiplier_shadow(seed: int = 0, quick: bool = False) -> Report:
    """‖s(diag(σ)R)‖_{M(ℓ₂,E)} <= √2·M₍₂₎(E)·‖σ‖_E·‖R‖."""
    report = Report(name="eigenvalue multiplier")
    pairs = 10 if quick else 100
    for text in ("lp(1)", "lp(4/3)"):
        E = parse(text)
        for index in range(pairs):
            rng = rng_stream(seed, 50_000 + index)
            n = int(rng.integers(2, 33))
            sigma = rng.standard_normal(n)
            R = rng.standard_normal((n, n))
            for check in eigenvalue_multiplier_check(sigma, R, E).checks:
                report.checks.append(check.model_copy(update={"name": f"{text} #{index} n={n} {check.name}"}))
    return report


def invariant_suite(seed: int = 0, quick: bool = False) -> Report:
    """Symmetry, homogeneity, triangle, duality, projection idempotence, determinism."""
    report = Report(name="invariants")
    trials = 5 if quick else 25
    config = SolverConfig(seed=seed, restarts=8)
    for index, text in enumerate(INVARIANT_SPACES):
        E = parse(text)
        rng = rng_stream(seed, 60_000 + index)
        simple = simplify(E)
        quasi = is_quasi_normed(simple)
        envelope = None
        if isinstance(simple, (Lp, LorentzD)):
            envelope = 1.0
        elif not isinstance(simple, Marcinkiewicz):
            envelope = 2.0
        embedding = 0.0
        for trial in range(trials):
            n = int(rng.integers(1, 17))
            x, y = rng.standard_normal(n), rng.standard_normal(n)
            c = float(rng.uniform(-5.0, 5.0))
            value = norm(E, x).value
            tol = 1e-10 * max(1.0, value)
            tag = f"{text} #{trial}"
            _relative(report, f"{tag} symmetry", norm(E, x[rng.permutation(n)]).value, value, 1e-12)
            _relative(report, f"{tag} homogeneity", norm(E, c * x).value, abs(c) * value, 1e-10)
            if envelope is not None:
                weak = norm(Marcinkiewicz(base=E), x).value
                embedding = max(embedding, weak / value)
                report.add(f"{tag} marcinkiewicz", weak, envelope * value, 1e-9 * max(1.0, value))
            if not quasi:
                report.add(f"{tag} triangle", norm(E, x + y).value, value + norm(E, y).value, tol)
                dual = kothe_dual_norm(E, y, config=config)
                if dual.exact_value:
                    pairing = float(np.abs(x) @ np.abs(y))
                    report.add(f"{tag} duality", pairing, value * dual.value, tol)
        if envelope is not None:
            report.values[f"{text} embedding"] = embedding
    rng = rng_stream(seed, 61_000)
    for trial in range(trials):
        z = rng.standard_normal(int(rng.integers(1, 50)))
        once = project_monotone(z)
        report.add(f"projection #{trial}", float(np.max(np.abs(project_monotone(once) - once))), 1e-12)
    m = rng_stream(seed, 62_000).standard_normal(8)
    target = parse("lorentz(4/3,2)")
    first = multiplier_norm(Lp(p=1.5), target, m, config)
    second = multiplier_norm(Lp(p=1.5), target, m, config)
    report.add("determinism", abs(first.lower - second.lower) + abs(first.upper - second.upper), 0.0)
    return report


CRITERIA: Dict[str, Callable[..., Report]] = {
    "pietsch": pietsch_tightness,
    "sandwich": fundamental_sandwich,
    "lorentz": lorentz_no_logarithm,
    "orlicz": orlicz_formula,
    "main-theorem": main_theorem_sandwich,
    "isometry": multiplier_isometry,
    "kfun": k_functional_oracle,
    "weyl": weyl_suite,
    "eigenvalues": eigenvalue_multiplier_shadow,
    "invariants": invariant_suite,
}


def run_all(seed: int = 0, quick: bool = False) -> List[Report]:
    """Every acceptance criterion, in a fixed order."""
    reports = []
    for name, criterion in CRITERIA.items():
        logger.info("running acceptance criterion %s", name)
        report = criterion(seed=seed, quick=quick)
        if not report.passed:
            logger.warning("criterion %s: %d failed checks", name, len(report.failures()))
        reports.append(report)
    return reports
