"""
Test Taylor/boundary conversions, norms and the Herglotz transform
"""
import numpy as np
import pytest
from numpy.testing import assert_allclose

from hardygkz import (
    AliasingError,
    BoundaryFunction,
    DiskFunction,
    DomainError,
    HpNormSpec,
    NotAnalyticError,
    boundary_samples,
    evaluate,
    herglotz_transform,
    hp_norm,
    poisson_integral,
    project_analytic,
    ring_samples,
    taylor_from_boundary,
)


@pytest.mark.parametrize(
    "taylor, z, expected",
    [
        ([1], 0.7j, 1),
        ([0, 1], 0.5, 0.5),
        ([0.5**k for k in range(65)], 0.3, 1 / (1 - 0.15)),
    ],
)
def test_evaluate(taylor, z, expected):
    assert_allclose(evaluate(DiskFunction(taylor), z), expected, atol=1e-12)


@pytest.mark.parametrize("z", [1.0, 1j, 1.5 - 0.2j])
def test_evaluate_outside_disk(z):
    with pytest.raises(DomainError):
        evaluate(DiskFunction([1, 1]), z)


def test_boundary_samples_examples():
    assert_allclose(boundary_samples(DiskFunction([1]), 8).samples, np.ones(8), atol=1e-15)
    assert_allclose(boundary_samples(DiskFunction([0, 1]), 4).samples, [1, 1j, -1, -1j], atol=1e-15)
    assert abs(boundary_samples(DiskFunction([1, 1]), 8).samples[4]) < 1e-15


def test_boundary_samples_aliasing():
    with pytest.raises(AliasingError):
        boundary_samples(DiskFunction(np.ones(8)), 8)
    with pytest.raises(DomainError):
        boundary_samples(DiskFunction([1, 1]), 12)


def test_trailing_zeros_do_not_alias():
    f = DiskFunction(np.r_[1.0, 2.0, np.zeros(100)])
    assert_allclose(boundary_samples(f, 8).samples, boundary_samples(DiskFunction([1, 2]), 8).samples)


def test_taylor_from_boundary_examples():
    assert taylor_from_boundary(BoundaryFunction(np.full(16, 3.0)), 0).allclose(DiskFunction([3]))
    pure = BoundaryFunction.from_callable(lambda theta: np.exp(2j * theta), 16)
    assert taylor_from_boundary(pure, 4).allclose(DiskFunction([0, 0, 1, 0, 0]), tol=1e-14)

    anti = BoundaryFunction.from_callable(lambda theta: np.exp(-1j * theta), 16)
    with pytest.raises(NotAnalyticError) as info:
        taylor_from_boundary(anti, 4)
    assert_allclose(info.value.ratio, 1.0, atol=1e-12)


@pytest.mark.parametrize("seed", range(5))
def test_round_trip(seed):
    rng = np.random.default_rng(seed)
    d = int(rng.integers(1, 200))
    f = DiskFunction(rng.standard_normal(d + 1) + 1j * rng.standard_normal(d + 1))
    g = taylor_from_boundary(boundary_samples(f, 512), d)
    assert f.allclose(g, tol=1e-12)


def test_project_analytic_reports_leak():
    mixed = BoundaryFunction.from_callable(lambda theta: 1 + 0.1 * np.exp(-1j * theta), 64)
    f, ratio = project_analytic(mixed, 4)
    assert f.allclose(DiskFunction([1]), tol=1e-14)
    assert_allclose(ratio, 0.01 / 1.01, rtol=1e-12)


def test_norm_examples():
    assert_allclose(hp_norm(DiskFunction([1])), 1.0)
    assert_allclose(hp_norm(DiskFunction([1]), HpNormSpec(space="Dirichlet")), 1.0)
    assert_allclose(hp_norm(DiskFunction([1, 1])), np.sqrt(2), rtol=1e-12)
    assert_allclose(hp_norm(DiskFunction([1, 1]), HpNormSpec(p=np.inf)), 2.0, atol=1e-6)


def test_weighted_norms():
    f = DiskFunction([1, 1, 1])
    assert_allclose(hp_norm(f, HpNormSpec(space="Bergman2")), np.sqrt(1 + 1 / 2 + 1 / 3))
    assert_allclose(hp_norm(f, HpNormSpec(space="Dirichlet")), np.sqrt(6))


@pytest.mark.parametrize(
    "p, space", [(0, "Hardy"), (-1, "Hardy"), (1, "Bergman"), (2, "Sobolev")]
)
def test_norm_spec_validation(p, space):
    with pytest.raises(ValueError):
        HpNormSpec(p=p, space=space)


@pytest.mark.parametrize("seed", range(10))
def test_parseval_and_monotonicity(seed):
    rng = np.random.default_rng(seed)
    f = DiskFunction(rng.standard_normal(129) + 1j * rng.standard_normal(129))
    h2 = hp_norm(f)
    assert_allclose(h2, np.linalg.norm(f.taylor), rtol=1e-12)
    assert hp_norm(f, HpNormSpec(p=np.inf)) >= h2 >= abs(f.taylor[0])


def test_herglotz_examples():
    n = 64
    constant = BoundaryFunction(np.full(n, 2.5))
    assert herglotz_transform(constant, 4).allclose(DiskFunction([2.5]), tol=1e-14)
    cos1 = BoundaryFunction.from_callable(np.cos, n)
    assert herglotz_transform(cos1, 4).allclose(DiskFunction([0, 1]), tol=1e-14)
    cos2 = BoundaryFunction.from_callable(lambda theta: np.cos(2 * theta), n)
    assert herglotz_transform(cos2, 4).allclose(DiskFunction([0, 0, 1]), tol=1e-14)


def test_herglotz_rejects_complex_data():
    with pytest.raises(DomainError):
        herglotz_transform(BoundaryFunction(np.full(8, 1j)), 2)


@pytest.mark.parametrize("r, alpha", [(0.0, 0.0), (0.5, 1.0), (0.9, -2.0)])
def test_herglotz_real_part_is_poisson_integral(r, alpha):
    u = BoundaryFunction.from_callable(lambda theta: np.exp(np.cos(theta)) * np.sin(2 * theta) + 1, 4096)
    z = r * np.exp(1j * alpha)
    h = herglotz_transform(u, 256)
    assert_allclose(evaluate(h, z).real, poisson_integral(u, z), atol=1e-3 / (1 - r))


def test_ring_samples():
    f = DiskFunction([1, 2, 3])
    z = 0.5 * np.exp(2j * np.pi * np.arange(8) / 8)
    assert_allclose(ring_samples(f, 0.5, 8).samples, 1 + 2 * z + 3 * z**2, atol=1e-14)
    assert_allclose(ring_samples(f, 0.0, 8).samples, np.ones(8), atol=1e-15)


def test_disk_function_arithmetic():
    f = DiskFunction([1, 2])
    g = DiskFunction([0, 1, 1])
    assert (f + g).allclose(DiskFunction([1, 3, 1]))
    assert (f * g).allclose(DiskFunction([0, 1, 3, 2]))
    assert (2j * f).allclose(DiskFunction([2j, 4j]))
    assert (f - f).is_zero()
    assert DiskFunction.from_dict(f.to_dict()).allclose(f, tol=0)
