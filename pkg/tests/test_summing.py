"""Test weak norms, summing-norm estimates and the inclusion check."""

import math

import numpy as np
import pytest

from seqnorm.exceptions import (
    FamilyTooLarge,
    InvalidDescriptor,
    InvalidParameter,
    MissingAttestation,
    ParameterOrder,
)
from seqnorm.models import (
    Attestation,
    Certification,
    FiniteOperator,
    LorentzD,
    Lp,
    Marcinkiewicz,
    Matrix,
    VectorFamily,
    WeightRule,
)
from seqnorm.summing import (
    bennett_carl_exponent,
    concavity_estimate,
    coordinate_family,
    generate_families,
    inclusion_consistency,
    section_constant,
    summing_constant,
    summing_lower,
    summing_upper_main,
    weak_p_bounds,
    weak_p_norm,
)

LP1 = Lp(p=1.0)
LP2 = Lp(p=2.0)
LINF = Lp(p=math.inf)


def test_weak_norm_of_coordinates():
    """Test closed forms for the unit vector basis."""
    family = coordinate_family(4)
    assert weak_p_norm(family, 2.0, LP2).value == pytest.approx(1.0)
    assert weak_p_norm(family, 1.0, LINF).value == pytest.approx(1.0)
    # the dual ball of ℓ_1 is the cube
    assert weak_p_norm(family, 2.0, LP1).value == pytest.approx(2.0)


def test_weak_one_norm_by_sign_enumeration():
    """Test sup over signs of ‖Σ ε_i x_i‖_2."""
    family = VectorFamily.of([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
    result = weak_p_norm(family, 1.0, LP2)
    assert result.exact_value
    assert result.value == pytest.approx(2.0 * math.sqrt(2.0))


def test_weak_norm_family_too_large():
    """Test that exact mode refuses families beyond sign enumeration."""
    family = VectorFamily.of(np.ones((21, 3)))
    with pytest.raises(FamilyTooLarge):
        weak_p_bounds(family, 1.0, LP2, exact=True)


def test_weak_norm_estimated_bracket():
    """Test that estimated weak norms come with ordered bounds."""
    rows = np.random.default_rng(5).standard_normal((6, 4))
    bounds = weak_p_bounds(VectorFamily.of(rows), 2.0, Lp(p=3.0))
    assert bounds.certification == Certification.NUMERICAL
    assert 0 < bounds.lower <= bounds.upper
    assert bounds.lower >= np.max(np.linalg.norm(rows, ord=3, axis=1)) * (1 - 1e-12)


def test_weak_norm_rejects_small_p():
    """Test that p must be at least one."""
    with pytest.raises(InvalidParameter):
        weak_p_bounds(coordinate_family(2), 0.5, LP2)


def test_summing_constant():
    """Test c_p^E for convex spaces and the certified bounds for non-convex ones."""
    assert summing_constant(LP2, 2.0) == 1.0
    assert summing_constant(Marcinkiewicz(exponent=0.5), 2.0) == 1.0
    E = LorentzD(w=WeightRule(alpha=0.75), p=1.0)
    assert summing_constant(E, 2.0) == pytest.approx(math.sqrt(3.0))
    assert summing_constant(E, 2.0) >= section_constant(E, 2.0, 16)


def test_summing_constant_refuses_missing_inclusions():
    """Test that ℓ_2 ↪ ℓ_1 and ℓ_2 ↪ d(n^{-1/2}, 1) carry no constant."""
    with pytest.raises(InvalidDescriptor):
        summing_constant(LP1, 2.0)
    with pytest.raises(InvalidDescriptor):
        summing_constant(LorentzD(w=WeightRule(alpha=0.5), p=1.0), 2.0)
    T = FiniteOperator.identity(4, LP2, LP2)
    with pytest.raises(InvalidDescriptor):
        summing_lower(T, LP1, 2.0, [coordinate_family(4)])


def test_section_constant_grows_with_the_dimension():
    """Test the ℓ_2ⁿ → ℓ_1ⁿ section norm √n as a lower bound."""
    assert section_constant(LP2, 2.0, 9) == 1.0
    assert section_constant(LP1, 2.0, 4) == pytest.approx(2.0)
    assert section_constant(LP1, 2.0, 16) == pytest.approx(4.0)


def test_summing_lower_identity_on_l2():
    """Test π_2(id: ℓ_2^n → ℓ_2^n) = √n from the coordinate family."""
    T = FiniteOperator.identity(9, LP2, LP2)
    bounds = summing_lower(T, LP2, 2.0, [coordinate_family(9)])
    assert bounds.lower == pytest.approx(3.0)
    assert "coordinates" in bounds.note


def test_summing_lower_dimension_mismatch():
    """Test that families must live in the operator domain."""
    T = FiniteOperator.identity(3, LP2, LP2)
    with pytest.raises(InvalidParameter):
        summing_lower(T, LP2, 2.0, [coordinate_family(4)])


def test_summing_lower_skips_zero_families():
    """Test that a zero family contributes nothing."""
    T = FiniteOperator.identity(2, LP2, LP2)
    bounds = summing_lower(T, LP2, 2.0, [VectorFamily.of(np.zeros((2, 2)))])
    assert bounds.lower == 0.0


def test_summing_upper_main():
    """Test √2·M₍₂₎ for ℓ_1 and refusal without an attestation."""
    assert summing_upper_main(LP1) == pytest.approx(math.sqrt(2.0))
    with pytest.raises(MissingAttestation):
        summing_upper_main(Lp(p=3.0))
    with pytest.raises(MissingAttestation):
        summing_upper_main(LorentzD(w=WeightRule(alpha=0.5), p=1.5))


def test_bennett_carl_exponent():
    """Test 1/r = 1/u - 1/2."""
    assert bennett_carl_exponent(1.0) == pytest.approx(2.0)
    assert bennett_carl_exponent(4 / 3) == pytest.approx(4.0)
    assert bennett_carl_exponent(2.0) == math.inf
    with pytest.raises(InvalidParameter):
        bennett_carl_exponent(3.0)


def test_concavity_estimate():
    """Test sampled 2-concavity constants against known values."""
    l1 = concavity_estimate(LP1, 4, trials=50, seed=1)
    assert l1.upper == 1.0
    assert 0 < l1.lower <= 1.0 + 1e-9
    linf = concavity_estimate(LINF, 4, trials=10, seed=1)
    assert linf.upper == math.inf
    assert linf.lower >= 2.0 - 1e-12
    with pytest.raises(InvalidParameter):
        concavity_estimate(LP1, 1)


def test_inclusion_consistency_identity():
    """Test the inclusion report for id: ℓ_1^4 → ℓ_2^4."""
    T = FiniteOperator.identity(4, LP1, LP2)
    report = inclusion_consistency(T, LP1, 1.0, 2.0, [coordinate_family(4)], rhs_upper=10.0)
    assert report.values["r"] == 2.0
    assert report.values["lhs_lower"] == pytest.approx(1.0)
    assert report.values["rhs_lower"] == pytest.approx(1.0)
    assert {check.name for check in report.checks} == {
        "lhs_lower<=factor*rhs_upper",
        "rhs_lower<=rhs_upper",
        "lhs_lower<=main_bound",
    }
    assert report.passed


def test_inclusion_consistency_detects_contradiction():
    """Test that an upper bound below a certified lower bound fails."""
    T = FiniteOperator.identity(4, LP1, LP2)
    report = inclusion_consistency(T, LP1, 1.0, 2.0, [coordinate_family(4)], rhs_upper=0.1)
    assert not report.passed


def test_inclusion_consistency_parameter_order():
    """Test that p < q is required."""
    T = FiniteOperator.identity(2, LP2, LP2)
    with pytest.raises(ParameterOrder):
        inclusion_consistency(T, LP1, 2.0, 2.0, [coordinate_family(2)])


def test_generate_families_is_seeded():
    """Test family generation strategies and reproducibility."""
    first = generate_families(4, count=2, seed=3)
    second = generate_families(4, count=2, seed=3)
    labels = [family.label for family in first]
    assert labels[:3] == ["coordinates", "blocks-2", "blocks-4"]
    assert len(first) == 7
    assert all(family.dim == 4 for family in first)
    assert [f.vectors for f in first] == [f.vectors for f in second]
    only = generate_families(4, count=1, strategies=("gaussian",))
    assert [family.label for family in only] == ["gaussian-0"]


def test_concavity_estimate_flags_a_contradicted_attestation(monkeypatch):
    """Test that a sampled ratio above the recorded M₍₂₎ is reported, not clamped."""
    monkeypatch.setattr(
        "seqnorm.summing.attestation", lambda E: Attestation(convex=2.0, concave=2.0, m2=0.5)
    )
    bounds = concavity_estimate(LP2, 4, trials=20, seed=1)
    assert bounds.lower == pytest.approx(1.0)
    assert bounds.upper == math.inf
    assert not bounds.checks["attested"]
    assert not bounds.passed


def test_concavity_estimate_passes_a_true_attestation():
    """Test that ℓ_2 meets its recorded constant."""
    bounds = concavity_estimate(LP2, 4, trials=20, seed=1)
    assert bounds.checks["attested"]
    assert bounds.lower == pytest.approx(1.0)
    assert bounds.upper == 1.0


def _random_operator(seed: int, n: int = 4) -> FiniteOperator:
    matrix = np.random.default_rng(seed).standard_normal((n, n))
    return FiniteOperator(matrix=Matrix.of(matrix), domain=LP1, codomain=LP2)


def test_summing_lower_grows_with_more_families():
    """Test that adding families never lowers the estimate."""
    T = _random_operator(0)
    families = generate_families(4, count=8, seed=3)
    values = [summing_lower(T, LP2, 2.0, families[:j]).lower for j in range(1, len(families) + 1)]
    assert all(b >= a for a, b in zip(values, values[1:]))


@pytest.mark.parametrize("c", [-3.0, 0.5, 2.0])
def test_summing_lower_scales_with_the_operator(c):
    """Test summing_lower(cT) = |c|·summing_lower(T) for fixed families."""
    T = _random_operator(1)
    families = generate_families(4, count=8, seed=4)
    base = summing_lower(T, LP2, 2.0, families).lower
    assert summing_lower(T.scaled(c), LP2, 2.0, families).lower == pytest.approx(abs(c) * base, rel=1e-12)


def test_summing_lower_respects_the_ideal_property():
    """Test that composing with S on ℓ_2 costs at most ‖S‖ for fixed families."""
    T = _random_operator(2)
    S = np.random.default_rng(5).standard_normal((4, 4))
    ST = FiniteOperator(matrix=Matrix.of(S @ T.matrix.to_array()), domain=LP1, codomain=LP2)
    families = generate_families(4, count=8, seed=6)
    size = float(np.linalg.svd(S, compute_uv=False)[0])
    lhs = summing_lower(ST, LP2, 2.0, families).lower
    assert lhs <= size * summing_lower(T, LP2, 2.0, families).lower * (1 + 1e-12)
