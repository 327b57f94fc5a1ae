"""Test Köthe duals, powers and multiplier norms."""

import itertools
import math

import numpy as np
import pytest

from seqnorm.duality import (
    identity_norm,
    kothe_dual_norm,
    kothe_dual_upper,
    level_function_dual,
    m2e_norm,
    multiplier_norm,
    multiplier_upper,
    power_norm,
)
from seqnorm.exceptions import DimensionMismatch, InvalidDescriptor
from seqnorm.models import (
    Certification,
    Dual,
    LorentzD,
    LorentzPQ,
    Lp,
    Orlicz,
    OrliczFamily,
    OrliczFunction,
    WeightRule,
)
from seqnorm.spaces import norm

LP1 = Lp(p=1.0)
LP2 = Lp(p=2.0)
D_HALF = WeightRule(alpha=0.5)


def test_dual_of_lp_is_conjugate():
    """Test that the dual of ℓ_{4/3} is ℓ_4."""
    result = kothe_dual_norm(Lp(p=4 / 3), [3.0, 4.0])
    assert result.exact_value
    assert result.value == pytest.approx((81.0 + 256.0) ** 0.25)


def test_dual_of_lorentz_d_level_function():
    """Test the closed form for the dual of d(n^{-1/2}, 1) at 1_4."""
    result = kothe_dual_norm(LorentzD(w=D_HALF, p=1.0), np.ones(4))
    assert result.exact_value
    assert result.value == pytest.approx(4.0 / D_HALF.partial_sum(4))


def test_level_function_dual_of_constant_weights():
    """Test that constant weights give the conjugate ℓ_p norm."""
    x = np.array([1.0, -2.0, 0.5])
    assert level_function_dual(np.ones(3), 2.0, x) == pytest.approx(np.linalg.norm(x))
    assert level_function_dual(np.ones(3), 1.0, x) == pytest.approx(2.0)


def test_generic_dual_matches_closed_form():
    """Test the reciprocal solver against the ℓ_2 closed form."""
    result = kothe_dual_norm(LP2, [3.0, 4.0], method="generic")
    assert result.certification == Certification.NUMERICAL
    assert result.value == pytest.approx(5.0, rel=1e-4)


def test_dual_refuses_quasi_normed_spaces():
    """Test that ℓ_{4/3,2} has no supported Köthe dual."""
    with pytest.raises(InvalidDescriptor):
        kothe_dual_norm(LorentzPQ(p=4 / 3, q=2.0), [1.0, 1.0])


def test_dual_rejects_unknown_method():
    """Test method validation."""
    with pytest.raises(ValueError):
        kothe_dual_norm(LP2, [1.0], method="fast")


def test_dual_of_zero_vector():
    """Test that the dual norm of zero is exactly zero."""
    assert kothe_dual_norm(LorentzD(w=D_HALF, p=2.0), [0.0, 0.0]).value == 0.0


def test_power_norm():
    """Test ‖(9, 16)‖ in (ℓ_1)^{1/2}."""
    result = power_norm(LP1, 0.5, [9.0, 16.0])
    assert result.exact_value
    assert result.value == pytest.approx(math.sqrt(337.0))


def test_power_norm_refuses_illegal_power():
    """Test that (ℓ_1)^2 is refused."""
    with pytest.raises(InvalidDescriptor):
        power_norm(LP1, 2.0, [1.0, 1.0])


def test_m2e_chain_for_l1():
    """Test that the chain gives M(ℓ_2, ℓ_1) = ℓ_2."""
    assert m2e_norm(LP1, [3.0, 4.0]).value == pytest.approx(5.0)


def test_m2e_chain_needs_two_concavity():
    """Test that the chain refuses spaces without an attestation."""
    with pytest.raises(InvalidDescriptor):
        m2e_norm(Lp(p=3.0), [1.0, 1.0])


def test_multiplier_norm_closed_form():
    """Test ‖(3, 4)‖ in M(ℓ_2, ℓ_1)."""
    pair = multiplier_norm(LP2, LP1, [3.0, 4.0])
    assert pair.certification == Certification.EXACT
    assert pair.lower == pair.upper == pytest.approx(5.0)


def test_multiplier_norm_schur_constant():
    """Test the exact value for ℓ_2 → ℓ_{4/3,2} at a constant multiplier."""
    F = LorentzPQ(p=4 / 3, q=2.0)
    value, exact = multiplier_upper(LP2, F, np.ones(2))
    assert exact
    assert value == pytest.approx(math.sqrt(1 + math.sqrt(2)) / math.sqrt(2))


def test_multiplier_norm_of_zero():
    """Test that the zero multiplier has norm zero."""
    pair = multiplier_norm(Lp(p=3.0), LorentzD(w=D_HALF, p=1.0), [0.0, 0.0])
    assert pair.upper == 0.0


def test_multiplier_norm_numerical_bracket():
    """Test that searched bounds bracket the ratio at the constant witness."""
    E, F = Lp(p=3.0), LorentzD(w=D_HALF, p=1.0)
    m = np.array([2.0, 1.0, 0.5, 0.25])
    pair = multiplier_norm(E, F, m)
    assert pair.lower <= pair.upper
    assert pair.lower >= norm(F, m).value / norm(E, np.ones(4)).value * (1 - 1e-9)
    assert pair.witness is not None


def test_identity_norm_sandwich():
    """Test the fundamental sandwich for ℓ_2 → d(n^{-1/2}, 3/2)."""
    F = LorentzD(w=D_HALF, p=1.5)
    pair = identity_norm(LP2, F, 16)
    assert pair.certification == Certification.EXACT
    assert pair.checks["sandwich_lower"]
    assert pair.passed


def test_identity_norm_l2_l1():
    """Test ‖id: ℓ_2^n → ℓ_1^n‖ = √n."""
    assert identity_norm(LP2, LP1, 9).upper == pytest.approx(3.0)


def test_identity_norm_rejects_empty_dimension():
    """Test that n must be positive."""
    with pytest.raises(DimensionMismatch):
        identity_norm(LP2, LP1, 0)


def test_generic_dual_of_lorentz_d_against_brute_force():
    """Test the reciprocal solver for d(n^{-1/2}, 1) at 1_4 against a monotone-cone grid."""
    E = LorentzD(w=D_HALF, p=1.0)
    x = np.ones(4)
    result = kothe_dual_norm(E, x, method="generic")
    assert result.certification == Certification.NUMERICAL
    grid = np.linspace(0.0, 1.0, 11)
    best = 0.0
    for tail in itertools.product(grid, repeat=3):
        y = np.array((1.0,) + tail)
        if np.all(np.diff(y) <= 0):
            best = max(best, float(x @ y) / norm(E, y).value)
    assert result.value == pytest.approx(best, rel=1e-3)
    assert result.value == pytest.approx(4.0 / D_HALF.partial_sum(4), rel=1e-6)


@pytest.mark.parametrize("seed", range(4))
def test_second_dual_is_dominated(seed):
    """Test <|x|, |y|> <= ‖x‖_E ‖y‖_{E^×}, so ‖x‖_{E^××} <= ‖x‖_E."""
    rng = np.random.default_rng(seed)
    E = LorentzD(w=D_HALF, p=1.0)
    x = rng.standard_normal(6)
    for _ in range(10):
        y = rng.standard_normal(6)
        dual = kothe_dual_norm(E, y).value
        assert float(np.abs(x) @ np.abs(y)) <= norm(E, x).value * dual * (1 + 1e-9)
    assert kothe_dual_norm(Dual(inner=E), x).value <= norm(E, x).value * (1 + 1e-9)


def test_multiplier_into_l1_is_the_dual():
    """Test M(E, ℓ_1) = E^× against the Köthe dual."""
    E = LorentzD(w=D_HALF, p=1.0)
    m = np.array([3.0, -1.0, 2.0, 0.5])
    dual = kothe_dual_norm(E, m).value
    pair = multiplier_norm(E, LP1, m)
    assert pair.upper == pytest.approx(dual, rel=1e-9)
    assert pair.lower <= dual * (1 + 1e-9)
    assert pair.lower == pytest.approx(dual, rel=1e-4)


def test_kothe_dual_upper_is_exact_for_lp():
    """Test that the solver-free bound is the conjugate norm on ℓ_p."""
    assert kothe_dual_upper(Lp(p=4 / 3), [3.0, 4.0]) == pytest.approx((81.0 + 256.0) ** 0.25)
    assert kothe_dual_upper(LP2, [0.0, 0.0]) == 0.0


def test_kothe_dual_upper_bounds_the_orlicz_dual():
    """Test that the Abel bound dominates the reciprocal solver on a powlog Orlicz space."""
    E = Orlicz(phi=OrliczFunction(family=OrliczFamily.POWLOG, params=(1.5,)))
    x = np.array([2.0, 1.0, 0.5, 0.25])
    assert kothe_dual_upper(E, x) >= kothe_dual_norm(E, x).value * (1 - 1e-9)


def test_kothe_dual_upper_of_a_quasi_normed_space():
    """Test that quasi-normed spaces fall back to the ℓ_1 norm."""
    assert kothe_dual_upper(LorentzPQ(p=4 / 3, q=2.0), [1.0, -2.0]) == 3.0


def test_multiplier_search_reaches_the_closed_form():
    """Test that the forced ascent matches M(ℓ_2, ℓ_{4/3}) = ℓ_4."""
    m = np.array([2.0, 1.0, 0.5])
    pair = multiplier_norm(LP2, Lp(p=4 / 3), m, method="search")
    assert pair.upper == pytest.approx(float(np.sum(m**4)) ** 0.25)
    assert pair.lower == pytest.approx(pair.upper, rel=1e-6)
    assert pair.checks["consistent"]
    assert pair.witness is not None


def test_multiplier_search_flags_a_low_upper_bound(monkeypatch):
    """Test that a searched ratio above the claimed closed form fails the consistency check."""
    m = np.array([2.0, 1.0, 0.5])
    true_value = float(np.sum(m**4)) ** 0.25
    monkeypatch.setattr("seqnorm.duality.multiplier_upper", lambda E, F, arr: (0.5 * true_value, True))
    assert multiplier_norm(LP2, Lp(p=4 / 3), m).passed
    pair = multiplier_norm(LP2, Lp(p=4 / 3), m, method="search")
    assert not pair.checks["consistent"]
    assert not pair.passed


def test_multiplier_rejects_unknown_method():
    """Test method validation."""
    with pytest.raises(ValueError):
        multiplier_norm(LP2, LP1, [1.0], method="exact")
