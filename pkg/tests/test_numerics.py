"""Test the shared numerical kernels."""

import math

import numpy as np
import pytest

from seqnorm.exceptions import MaxIterations, NoBracket
from seqnorm.models import SolverConfig
from seqnorm.numerics import (
    bisect,
    golden_section,
    jacobi_svd,
    minimize_convex,
    project_cone_slice,
    project_monotone,
    rng_stream,
)


def test_bisect_finds_root():
    """Test bisection on a monotone function."""
    root = bisect(lambda t: t * t - 2.0, 0.0, 2.0, tol=1e-14)
    assert root == pytest.approx(math.sqrt(2.0), abs=1e-13)


def test_bisect_step_count():
    """Test that bisection stays within ceil(log2(width / tol)) evaluations."""
    brackets = []
    bisect(lambda t: t - 0.3, 0.0, 1.0, tol=1e-6, callback=lambda lo, hi: brackets.append(hi - lo))
    assert len(brackets) <= math.ceil(math.log2(1.0 / 1e-6))
    assert brackets[-1] <= 1e-6


def test_bisect_requires_a_sign_change():
    """Test that bisection refuses a bracket without a sign change."""
    with pytest.raises(NoBracket):
        bisect(lambda t: t + 1.0, 0.0, 1.0)
    with pytest.raises(NoBracket):
        bisect(lambda t: t, 1.0, 1.0)


def test_golden_section():
    """Test golden-section search on a parabola."""
    point, value = golden_section(lambda t: (t - 0.7) ** 2 + 1.0, 0.0, 2.0, tol=1e-10)
    assert point == pytest.approx(0.7, abs=1e-6)
    assert value == pytest.approx(1.0)


def test_project_monotone():
    """Test pool-adjacent-violators with clipping at zero."""
    np.testing.assert_allclose(project_monotone([1.0, 2.0, 0.0, -1.0]), [1.5, 1.5, 0.0, 0.0])
    np.testing.assert_allclose(
        project_monotone([1.0, 2.0, 0.0, -1.0], nonnegative=False), [1.5, 1.5, 0.0, -1.0]
    )
    np.testing.assert_allclose(project_monotone([3.0, 2.0, 1.0]), [3.0, 2.0, 1.0])


def test_project_monotone_weighted():
    """Test that weights pull the pooled mean."""
    np.testing.assert_allclose(project_monotone([0.0, 3.0], weights=np.array([2.0, 1.0])), [1.0, 1.0])


def test_project_cone_slice():
    """Test the projection onto a slice of the monotone cone."""
    a = np.array([1.0, 1.0, 1.0])
    y = project_cone_slice(np.array([0.0, 2.0, -5.0]), a)
    assert float(a @ y) == pytest.approx(1.0)
    assert np.all(np.diff(y) <= 1e-12)
    assert np.all(y >= 0)


def test_minimize_convex_on_simplex_like_set():
    """Test projected subgradient descent on a smooth convex objective."""
    target = np.array([0.5, 0.2, 0.1])

    def objective(x):
        return float(np.sum((x - target) ** 2))

    def subgradient(x):
        return 2.0 * (x - target)

    result = minimize_convex(
        objective,
        subgradient,
        lambda x: np.maximum(x, 0.0),
        starts=[np.ones(3)],
        config=SolverConfig(max_iterations=2000, tolerance=1e-8),
    )
    np.testing.assert_allclose(result.point, target, atol=1e-3)
    assert result.value < 1e-5


def test_minimize_convex_strict_cap():
    """Test that a strict run raises MaxIterations carrying the best point."""
    with pytest.raises(MaxIterations) as exc_info:
        minimize_convex(
            lambda x: float(np.sum(np.abs(x - 100.0))),
            lambda x: np.sign(x - 100.0),
            lambda x: x,
            starts=[np.zeros(2)],
            config=SolverConfig(max_iterations=3, tolerance=1e-12),
            strict=True,
        )
    assert exc_info.value.result is not None


def test_rng_stream_is_reproducible():
    """Test that (seed, stream) fixes the draws and streams differ."""
    a = rng_stream(7, 1).standard_normal(5)
    b = rng_stream(7, 1).standard_normal(5)
    c = rng_stream(7, 2).standard_normal(5)
    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, c)


def test_jacobi_svd_known_values():
    """Test singular values of [[1, 1], [0, 1]] (the golden ratio and its inverse)."""
    U, s, Vt = jacobi_svd(np.array([[1.0, 1.0], [0.0, 1.0]]))
    phi = (1.0 + math.sqrt(5.0)) / 2.0
    np.testing.assert_allclose(s, [phi, phi - 1.0], rtol=1e-12)


@pytest.mark.parametrize("shape", [(5, 3), (3, 5), (4, 4)])
def test_jacobi_svd_matches_numpy(shape):
    """Test the factorization against numpy on random matrices."""
    A = rng_stream(3).standard_normal(shape)
    U, s, Vt = jacobi_svd(A)
    np.testing.assert_allclose(s, np.linalg.svd(A, compute_uv=False), rtol=1e-10)
    np.testing.assert_allclose((U * s) @ Vt, A, atol=1e-10)
    assert np.all(np.diff(s) <= 0)


def test_jacobi_svd_rank_deficient():
    """Test that zero singular values come out exactly zero."""
    _, s, _ = jacobi_svd(np.array([[1.0, 2.0], [2.0, 4.0]]))
    assert s[0] == pytest.approx(5.0)
    assert s[1] == pytest.approx(0.0, abs=1e-12)
