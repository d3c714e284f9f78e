"""
Test outer functions, inner factors and the outerness defect
"""
import numpy as np
import pytest
from numpy.testing import assert_allclose

from hardygkz import (
    BlaschkeProduct,
    BoundaryFunction,
    BoundaryZeroError,
    DiskFunction,
    DomainError,
    ModulusTooSmallError,
    SingularAtom,
    blaschke_eval,
    blaschke_samples,
    blaschke_taylor,
    boundary_samples,
    factorize,
    inner_part,
    is_outer,
    outer_from_modulus,
    outer_part,
    singular_inner_eval,
    singular_inner_samples,
)

N = 4096


def _modulus(func):
    return BoundaryFunction.from_callable(func, N)


def test_outer_from_constant_modulus():
    assert outer_from_modulus(_modulus(lambda theta: np.ones_like(theta))).allclose(DiskFunction([1]), tol=1e-14)


def test_outer_from_modulus_with_boundary_zero():
    g = outer_from_modulus(_modulus(lambda theta: np.abs(np.exp(1j * theta) - 1)))
    assert g.allclose(DiskFunction([1, -1]), tol=1e-8)


def test_outer_from_modulus_with_declared_zero():
    _lambda = np.exp(0.3j)
    g = outer_from_modulus(_modulus(lambda theta: np.abs(np.exp(1j * theta) - _lambda)), boundary_zeros=[_lambda])
    assert g.allclose(DiskFunction([1, -np.conj(_lambda)]), tol=1e-8)


def test_outer_from_modulus_with_zero_between_nodes():
    _lambda = np.exp(1j * np.pi / N)
    g = outer_from_modulus(_modulus(lambda theta: np.abs(np.exp(1j * theta) - _lambda)))
    assert g.allclose(DiskFunction([1, -np.conj(_lambda)]), tol=1e-6)


@pytest.mark.parametrize("angle", [0.3, 2.0 + 0.25 * 2 * np.pi / N, -1.0])
def test_outer_detects_off_grid_zero_times_smooth_factor(angle):
    _lambda = np.exp(1j * angle)
    g = outer_from_modulus(_modulus(lambda theta: np.abs((np.exp(1j * theta) - _lambda) * (3 + np.exp(1j * theta)))))
    assert g.allclose(DiskFunction([3, 1]) * DiskFunction([1, -np.conj(_lambda)]), tol=1e-6)


def test_outer_from_smooth_modulus():
    g = outer_from_modulus(_modulus(lambda theta: np.abs(2 + np.exp(1j * theta))))
    assert g.allclose(DiskFunction([2, 1]), tol=1e-10)


def test_outer_modulus_floor():
    # a whole arc of zeros is not an isolated boundary zero
    with pytest.raises(ModulusTooSmallError):
        outer_from_modulus(_modulus(lambda theta: np.where(np.abs(theta - np.pi) < 0.01, 0.0, 1.0)))
    with pytest.raises(ModulusTooSmallError):
        outer_from_modulus(_modulus(lambda theta: np.full_like(theta, 1e-12)), detect_boundary_zeros=False)


@pytest.mark.parametrize(
    "zeros, z, expected",
    [((), 0.4, 1), ((0,), 0.3j, 0.3j), ((0.5,), 0, -0.5)],
)
def test_blaschke_eval(zeros, z, expected):
    assert_allclose(blaschke_eval(BlaschkeProduct(zeros), z), expected, atol=1e-15)


def test_blaschke_validation():
    with pytest.raises(DomainError):
        BlaschkeProduct((1.0,))
    with pytest.raises(DomainError):
        BlaschkeProduct((0.5,), front=2.0)


def test_blaschke_is_inner():
    b = BlaschkeProduct((0.5, -0.3j, 0.7 * np.exp(1j)), front=1j)
    assert_allclose(np.abs(blaschke_samples(b).samples), 1.0, atol=1e-13)
    taylor = blaschke_taylor(b)
    assert_allclose(boundary_samples(taylor).samples, blaschke_samples(b).samples, atol=1e-12)


def test_singular_inner_eval():
    assert_allclose(singular_inner_eval(SingularAtom(1, 1e-15), 0.5), 1, atol=1e-12)
    assert_allclose(singular_inner_eval(SingularAtom(1, 1), 0), np.exp(-1), atol=1e-15)
    z = -0.999
    poisson = (1 - abs(z) ** 2) / abs(1 - z) ** 2
    assert_allclose(abs(singular_inner_eval(SingularAtom(1, 1), z)), np.exp(-poisson), atol=1e-6)
    with pytest.raises(DomainError):
        singular_inner_eval(SingularAtom(1, 1), 1.0)


def test_singular_inner_samples_are_unimodular_off_the_atom():
    samples = singular_inner_samples(SingularAtom(1, 0.2), 64).samples
    assert samples[0] == 0
    assert_allclose(np.abs(samples[1:]), 1.0, atol=1e-13)


@pytest.mark.parametrize("taylor", [[2, 1], [1], [3, -1, 0.5]])
def test_outer_part_of_outer_function(taylor):
    f = DiskFunction(taylor)
    assert outer_part(f).allclose(f, tol=1e-8)
    assert inner_part(f).taylor.allclose(DiskFunction([1]), tol=1e-8)


def test_blaschke_times_outer():
    b = BlaschkeProduct((0.5,))
    f = blaschke_taylor(b) * DiskFunction([2, 1])
    factorization = factorize(f.truncate(256))
    assert factorization.outer.allclose(DiskFunction([2, 1]), tol=1e-6)
    assert factorization.inner.taylor.allclose(blaschke_taylor(b), tol=1e-6)
    assert not factorization.outerness.verdict


def test_pure_blaschke_outer_part_is_one():
    b = BlaschkeProduct((0.5, 0.8j, -0.3 + 0.1j))
    assert outer_part(blaschke_samples(b)).allclose(DiskFunction([1]), tol=1e-6)


def test_boundary_zero_rejected_by_outer_part():
    with pytest.raises(BoundaryZeroError):
        outer_part(DiskFunction([-1, 1]))


def test_singular_atom_between_grid_points():
    s = SingularAtom(np.exp(1j * np.pi / N), 0.1)
    samples = singular_inner_samples(s) * boundary_samples(DiskFunction([2, 1]))
    factorization = factorize(samples)
    # |S*| = 1 off the atom, so the outer part only sees 2 + z
    assert factorization.outer.allclose(DiskFunction([2, 1]), tol=1e-8)
    rebuilt = factorization.inner.boundary * boundary_samples(factorization.outer)
    assert_allclose(rebuilt.samples, samples.samples, atol=1e-12)

    # the Taylor projection of the inner factor misses mostly near the atom
    projected = boundary_samples(factorization.inner.taylor).samples * boundary_samples(factorization.outer).samples
    error = np.abs(projected - samples.samples)
    theta = np.angle(np.exp(1j * samples.angles))
    assert np.max(error[np.abs(theta) < 0.05]) > np.max(error[np.abs(theta) > 0.5])


def _random_instance(rng):
    zeros = tuple(
        0.8 * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
        for _ in range(int(rng.integers(0, 6)))
    )
    _order = int(rng.integers(1, 4))
    a, b = rng.uniform(-0.2, 0.2, size=(2, _order))
    modulus = _modulus(
        lambda theta: 1.5 + sum(a[k] * np.cos((k + 1) * theta) + b[k] * np.sin((k + 1) * theta) for k in range(_order))
    )
    outer = outer_from_modulus(modulus)
    samples = blaschke_samples(BlaschkeProduct(zeros)) * boundary_samples(outer)
    if rng.uniform() < 0.5:
        atom = SingularAtom(np.exp(2j * np.pi * rng.uniform()), rng.uniform(0.01, 0.2))
        samples = samples * singular_inner_samples(atom)
    return samples, outer


@pytest.mark.parametrize("seed", range(100))
def test_factorization_round_trip(seed):
    samples, outer = _random_instance(np.random.default_rng(seed))
    factorization = factorize(samples)
    assert factorization.outer.allclose(outer, tol=1e-6)
    rebuilt = factorization.inner.boundary * boundary_samples(factorization.outer)
    assert np.max(np.abs(rebuilt.samples - samples.samples)) <= 1e-5
    assert_allclose(np.abs(factorization.inner.boundary.samples), 1.0, atol=1e-6)


@pytest.mark.parametrize(
    "taylor, defect, verdict",
    [
        ([1], 0.0, True),
        ([-0.5, 1], np.log(2), False),
        ([-1, 1], 0.0, True),
        ([0, 0, 2, 1], 0.0, False),
        ([1, -2, 1], 0.0, True),
        (np.polynomial.polynomial.polyfromroots([1, 1, 0.5]), np.log(2), False),
        (np.polynomial.polynomial.polyfromroots([1j, 1j, 1j, -2]), 0.0, True),
    ],
)
def test_is_outer_examples(taylor, defect, verdict):
    report = is_outer(DiskFunction(taylor))
    assert_allclose(report.defect, defect, atol=1e-6)
    assert report.verdict == verdict


def test_is_outer_locates_boundary_roots():
    report = is_outer(DiskFunction([-1, 0, 1]))
    assert report.verdict
    assert len(report.boundary_roots) == 2


def test_is_outer_counts_root_multiplicity():
    report = is_outer(DiskFunction(np.polynomial.polynomial.polyfromroots([1, 1, -1])))
    assert report.verdict
    assert_allclose(sorted(report.boundary_roots, key=np.real), [-1, 1, 1], atol=1e-12)


def test_is_outer_zero_function():
    with pytest.raises(DomainError):
        is_outer(DiskFunction([0, 0]))


def _roots_off_circle(rng, count):
    # keep roots at least 0.1 away from the circle so the grid mean is exact
    inside = rng.uniform(0.0, 0.9, count) * np.exp(2j * np.pi * rng.uniform(size=count))
    outside = rng.uniform(1.1, 3.0, count) * np.exp(2j * np.pi * rng.uniform(size=count))
    return np.where(rng.uniform(size=count) < 0.5, inside, outside)


@pytest.mark.parametrize("seed", range(20))
def test_jensen_defect(seed):
    rng = np.random.default_rng(seed)
    roots = _roots_off_circle(rng, int(rng.integers(1, 9)))
    f = DiskFunction(np.polynomial.polynomial.polyfromroots(roots))
    report = is_outer(f)
    expected = np.sum(-np.log(np.abs(roots[np.abs(roots) < 1])))
    assert report.defect >= -1e-8
    assert_allclose(report.defect, expected, atol=1e-8)
    assert report.verdict == bool(np.all(np.abs(roots) > 1))


@pytest.mark.parametrize("seed", range(10))
def test_invertible_functions_are_outer(seed):
    rng = np.random.default_rng(seed)
    g = DiskFunction(np.r_[3.0, 0.5 * rng.standard_normal(6) / np.arange(1, 7) ** 2])
    modulus = np.abs(boundary_samples(g).samples)
    assert modulus.min() >= 0.1 and modulus.max() <= 10
    assert is_outer(g).verdict


@pytest.mark.parametrize("seed", range(10))
def test_defect_is_additive(seed):
    rng = np.random.default_rng(seed)
    f = DiskFunction(np.polynomial.polynomial.polyfromroots(_roots_off_circle(rng, 4)))
    g = DiskFunction(np.polynomial.polynomial.polyfromroots(_roots_off_circle(rng, 5)))
    assert_allclose(is_outer(f * g).defect, is_outer(f).defect + is_outer(g).defect, atol=1e-6)
