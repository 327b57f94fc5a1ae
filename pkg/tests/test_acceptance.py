"""Test the acceptance suite."""

import pytest

from seqnorm.acceptance import (
    CRITERIA,
    eigenvalue_multiplier_shadow,
    fundamental_sandwich,
    invariant_suite,
    k_functional_oracle,
    lorentz_no_logarithm,
    main_theorem_sandwich,
    multiplier_isometry,
    orlicz_formula,
    pietsch_tightness,
    run_all,
    weyl_suite,
)
from seqnorm.duality import m2e_norm
from seqnorm.interpolation import k_functional_l1_linf
from seqnorm.models import Certification


@pytest.mark.parametrize(
    "criterion",
    [
        pietsch_tightness,
        fundamental_sandwich,
        lorentz_no_logarithm,
        orlicz_formula,
        multiplier_isometry,
    ],
)
def test_exact_criteria_pass_quickly(criterion):
    """Test the closed-form criteria in quick mode."""
    report = criterion(seed=0, quick=True)
    assert report.checks
    assert report.passed, [check.name for check in report.failures()]


def test_closed_form_criteria_are_exact():
    """Test that closed-form criteria are labeled exact."""
    assert pietsch_tightness(quick=True).certification == Certification.EXACT
    assert orlicz_formula(quick=True).certification == Certification.EXACT


def test_sandwich_ratio_for_lorentz_d():
    """Test the recorded ratio for d(n^{-1/2}, 3/2) at m = 256."""
    report = fundamental_sandwich(quick=True)
    assert report.values["dwp(pow(1/2),3/2) m=256"] == pytest.approx(1.78, abs=0.01)


def test_main_theorem_sandwich_quick():
    """Test that summing estimates stay inside the main bound."""
    report = main_theorem_sandwich(seed=0, quick=True)
    assert report.passed, [check.name for check in report.failures()]


def test_k_functional_oracle_quick():
    """Test the generic K-functional solver against the closed form."""
    report = k_functional_oracle(seed=0, quick=True)
    assert report.passed, [check.name for check in report.failures()]


def test_invariant_suite_quick():
    """Test symmetry, homogeneity, triangle and duality invariants."""
    report = invariant_suite(seed=0, quick=True)
    assert report.passed, [check.name for check in report.failures()]


def test_weyl_suite_quick():
    """Test the multiplicative Weyl inequality on the quick Gaussian ensemble."""
    report = weyl_suite(seed=0, quick=True)
    assert report.checks
    assert report.passed, [check.name for check in report.failures()]


def test_eigenvalue_multiplier_shadow_quick():
    """Test the singular value and eigenvalue bounds for diag(σ)·R on the quick sample."""
    report = eigenvalue_multiplier_shadow(seed=0, quick=True)
    assert report.checks
    assert report.passed, [check.name for check in report.failures()]


def test_criteria_order():
    """Test the fixed criterion order."""
    assert list(CRITERIA) == [
        "pietsch",
        "sandwich",
        "lorentz",
        "orlicz",
        "main-theorem",
        "isometry",
        "kfun",
        "weyl",
        "eigenvalues",
        "invariants",
    ]


@pytest.mark.slow
def test_run_all_quick():
    """Test that every criterion passes in quick mode."""
    reports = run_all(seed=0, quick=True)
    assert len(reports) == len(CRITERIA)
    assert all(report.passed for report in reports), [r.name for r in reports if not r.passed]


@pytest.mark.slow
def test_run_all_full():
    """Test the full sweeps."""
    assert all(report.passed for report in run_all(seed=0, quick=False))


def test_isometry_criterion_detects_a_wrong_closed_form(monkeypatch):
    """Test that the forced ascent exposes a closed form that is too small."""
    def halved(E, F, arr):
        return 0.5 * m2e_norm(F, arr).value, True

    monkeypatch.setattr("seqnorm.duality.multiplier_upper", halved)
    report = multiplier_isometry(seed=0, quick=True)
    assert not report.passed


def test_k_functional_oracle_detects_a_wrong_reference(monkeypatch):
    """Test that the oracle fails when the closed form is shifted by one percent."""
    def shifted(t, x):
        value, x1 = k_functional_l1_linf(t, x)
        return 1.01 * value, x1

    monkeypatch.setattr("seqnorm.acceptance.k_functional_l1_linf", shifted)
    report = k_functional_oracle(seed=0, quick=True)
    assert not report.passed
