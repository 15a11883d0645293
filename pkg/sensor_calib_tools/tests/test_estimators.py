"""
Tests for the augmented affine estimators.
"""

import logging

import numpy as np
import pytest

from sensor_calib_tools.core.errors import ContractViolationError, ShapeMismatchError, SingularMatrixError
from sensor_calib_tools.estimation.augment import apply_transform, augment, deaugment, deaugment_transform
from sensor_calib_tools.estimation.estimators import (
    _extract,
    fit_gleser_watson,
    fit_hybrid,
    fit_least_squares,
    fit_variant,
    leading_subspace,
)
from sensor_calib_tools.estimation.models import (
    AffineTransform,
    AugmentedData,
    AugmentedTransform,
    DataMatrix,
    EstimatorVariant,
    Method,
)
from sensor_calib_tools.estimation.objective import grad_f_bmat
from sensor_calib_tools.numerics.kernel import EigenResult, sym_eig

from .conftest import make_pair, random_transform

ALL_FITS = [
    lambda x, y: fit_gleser_watson(x, y, denoise=False),
    lambda x, y: fit_gleser_watson(x, y, denoise=True),
    fit_least_squares,
    fit_hybrid,
]


@pytest.mark.parametrize("q", [1, 2, 3])
@pytest.mark.parametrize("fit", ALL_FITS)
def test_noiseless_recovery(q, fit):
    truth = random_transform(q, seed=q)
    theta, x, y = make_pair(truth, n=40, seed=q)
    result = fit(x, y)

    np.testing.assert_allclose(result.transform.a, truth.a, atol=1e-8)
    np.testing.assert_allclose(result.transform.b, truth.b, atol=1e-7)
    np.testing.assert_allclose(result.theta_e.values, theta.values, atol=1e-7)


def test_noiseless_recovery_reference(reference):
    _, x, y = make_pair(reference, n=100)
    for variant in EstimatorVariant:
        result = fit_variant(variant, x, y)
        np.testing.assert_allclose(result.transform.a, reference.a, atol=1e-8)
        np.testing.assert_allclose(result.transform.b, reference.b, atol=1e-7)
        assert result.variant is variant


def test_eigen_paths_agree(reference):
    _, x, y = make_pair(reference, n=80, sigma=3.0, seed=4)
    direct = fit_gleser_watson(x, y, denoise=True)
    reduced = fit_gleser_watson(x, y, denoise=True, gram_direct_max_n=0)

    assert direct.diagnostics["eigen_path"] == "direct"
    assert reduced.diagnostics["eigen_path"] == "reduced"
    np.testing.assert_allclose(reduced.transform.a, direct.transform.a, rtol=1e-8, atol=1e-10)
    np.testing.assert_allclose(reduced.transform.b, direct.transform.b, rtol=1e-8, atol=1e-8)
    np.testing.assert_allclose(reduced.theta_e.values, direct.theta_e.values, rtol=1e-8, atol=1e-8)


def test_shared_origin_estimates(reference):
    """Gleser-Watson (with or without denoising) and hybrid project the same origins."""
    _, x, y = make_pair(reference, n=50, sigma=5.0, seed=9)
    plain = fit_gleser_watson(x, y, denoise=False)
    denoised = fit_gleser_watson(x, y, denoise=True)
    hybrid = fit_hybrid(x, y)

    np.testing.assert_allclose(denoised.theta_e.values, plain.theta_e.values, atol=1e-9)
    np.testing.assert_allclose(hybrid.theta_e.values, plain.theta_e.values, atol=1e-9)
    assert not np.allclose(denoised.transform.a, plain.transform.a)


def test_hybrid_transform_is_least_squares(reference):
    _, x, y = make_pair(reference, n=50, sigma=5.0, seed=2)
    ls = fit_least_squares(x, y)
    for rank in (1, 3, 10, 50):
        hybrid = fit_hybrid(x, y, denoise_rank=rank)
        np.testing.assert_array_equal(hybrid.transform.a, ls.transform.a)
        np.testing.assert_array_equal(hybrid.transform.b, ls.transform.b)
        assert hybrid.denoise_rank == rank


@pytest.mark.parametrize("gram_direct_max_n", [512, 0])
def test_hybrid_full_rank_keeps_measurements(reference, gram_direct_max_n):
    _, x, y = make_pair(reference, n=30, sigma=5.0, seed=1)
    hybrid = fit_hybrid(x, y, denoise_rank=x.n, gram_direct_max_n=gram_direct_max_n)
    ls = fit_least_squares(x, y)
    np.testing.assert_allclose(hybrid.theta_e.values, x.values, atol=1e-8)
    np.testing.assert_allclose(hybrid.theta_e.values, ls.theta_e.values, atol=1e-8)


def test_hybrid_rank_bounds(reference):
    _, x, y = make_pair(reference, n=20, sigma=1.0)
    with pytest.raises(ContractViolationError):
        fit_hybrid(x, y, denoise_rank=0)
    with pytest.raises(ContractViolationError):
        fit_hybrid(x, y, denoise_rank=21)


def test_least_squares_theta_is_measurement(reference):
    _, x, y = make_pair(reference, n=30, sigma=2.0)
    result = fit_least_squares(x, y)
    np.testing.assert_array_equal(result.theta_e.values, x.values)
    assert result.denoise_rank == 0
    assert result.method is Method.LEAST_SQUARES


@pytest.mark.parametrize("variant", list(EstimatorVariant))
def test_augmentation_row_is_exact(reference, variant):
    _, x, y = make_pair(reference, n=60, sigma=10.0, seed=5)
    result = fit_variant(variant, x, y)
    assert result.diagnostics["augmentation_row_deviation"] < 1e-9, (
        f"{variant.value}: last row of B drifted from (0, ..., 0, 1)"
    )


def test_nonaffine_data_fits_without_warning(caplog):
    rng = np.random.default_rng(0)
    x = rng.uniform(0.0, 3.0, size=(1, 40))
    y = np.exp(2.0 * x) + rng.standard_normal(x.shape)
    with caplog.at_level(logging.WARNING, logger="sensor_calib_tools.estimation"):
        result = fit_gleser_watson(DataMatrix(x), DataMatrix(y), denoise=False)
    assert result.diagnostics["augmentation_row_deviation"] < 1e-9
    assert not any("deviates" in r.getMessage() for r in caplog.records)


def test_extract_warns_on_perturbed_row(caplog):
    bmat = AffineTransform(np.array([[2.0, 0.5], [0.0, 1.5]]), np.array([1.0, -3.0])).to_augmented().bmat.copy()
    bmat[-1] += np.array([0.01, -0.02, 0.05])
    with caplog.at_level(logging.WARNING, logger="sensor_calib_tools.estimation"):
        transform, deviation = _extract(bmat, Method.GLESER_WATSON)
    assert deviation == pytest.approx(0.05)
    assert any("deviates" in r.getMessage() for r in caplog.records)
    # The returned transform ignores the free last row
    np.testing.assert_array_equal(transform.a, [[2.0, 0.5], [0.0, 1.5]])
    np.testing.assert_array_equal(transform.b, [1.0, -3.0])


def test_extract_quiet_on_exact_row(caplog):
    bmat = AffineTransform.identity(2).to_augmented().bmat
    with caplog.at_level(logging.WARNING, logger="sensor_calib_tools.estimation"):
        _, deviation = _extract(bmat, Method.LEAST_SQUARES)
    assert deviation == 0.0
    assert not caplog.records


def test_least_squares_scale_equivariance(reference):
    _, x, y = make_pair(reference, n=40, sigma=4.0, seed=3)
    base = fit_least_squares(x, y)
    scaled = fit_least_squares(DataMatrix(10.0 * x.values), DataMatrix(10.0 * y.values))
    np.testing.assert_allclose(scaled.transform.a, base.transform.a, rtol=1e-9)
    np.testing.assert_allclose(scaled.transform.b, 10.0 * base.transform.b, rtol=1e-9)


def test_sample_count_contract():
    with pytest.raises(ContractViolationError):
        DataMatrix(np.ones((2, 5)))
    x = DataMatrix(np.arange(10.0).reshape(2, 5), apply_only=True)
    with pytest.raises(ContractViolationError):
        fit_least_squares(x, x)
    with pytest.raises(ContractViolationError):
        fit_gleser_watson(x, x)


def test_shape_mismatch():
    x = DataMatrix(np.random.default_rng(0).uniform(size=(2, 10)))
    y = DataMatrix(np.random.default_rng(1).uniform(size=(2, 12)))
    with pytest.raises(ShapeMismatchError):
        fit_least_squares(x, y)
    with pytest.raises(ShapeMismatchError):
        fit_hybrid(x, y)


def test_singular_origins():
    x = DataMatrix(np.full((2, 10), 3.0))
    y = DataMatrix(np.random.default_rng(0).uniform(size=(2, 10)))
    with pytest.raises(SingularMatrixError) as excinfo:
        fit_least_squares(x, y)
    assert "singular" in str(excinfo.value)


def test_leading_subspace_is_orthonormal(reference):
    _, x, y = make_pair(reference, n=40, sigma=1.0)
    for limit in (512, 0):
        basis, info = leading_subspace(augment(x), augment(y), 3, limit)
        assert basis.shape == (40, 3)
        np.testing.assert_allclose(basis.T @ basis, np.eye(3), atol=1e-9)
        assert len(info["eigenvalues"]) == 3


def test_augment_roundtrip():
    x = DataMatrix(np.arange(12.0).reshape(2, 6))
    xa = augment(x)
    assert xa.p == 3
    assert np.all(xa.values[-1] == 1.0)
    np.testing.assert_array_equal(deaugment(xa).values, x.values)

    with pytest.raises(ContractViolationError):
        AugmentedData(np.zeros((3, 4)))


def test_augmented_transform(reference):
    bmat = reference.to_augmented()
    np.testing.assert_array_equal(bmat.bmat[-1], [0.0, 0.0, 1.0])
    back = deaugment_transform(bmat)
    np.testing.assert_array_equal(back.a, reference.a)
    np.testing.assert_array_equal(back.b, reference.b)

    bad = bmat.bmat.copy()
    bad[-1, 0] = 1e-6
    with pytest.raises(ContractViolationError):
        AugmentedTransform(bad)


def test_apply_and_inverse(reference):
    x = DataMatrix(np.random.default_rng(0).uniform(0, 100, size=(2, 7)), apply_only=True)
    mapped = apply_transform(reference, x)
    assert mapped.n == x.n
    np.testing.assert_allclose(mapped.values, reference.a @ x.values + reference.b[:, None])
    np.testing.assert_allclose(apply_transform(reference.inverse(), mapped).values, x.values, atol=1e-10)

    with pytest.raises(ShapeMismatchError):
        apply_transform(AffineTransform.identity(3), x)


def test_transform_dict_roundtrip(reference):
    data = reference.to_dict()
    assert data["q"] == 2
    assert data["a"] == [0.3430, 0.3430, 0.1715, 0.8575]
    restored = AffineTransform.from_dict(data)
    np.testing.assert_array_equal(restored.a, reference.a)
    np.testing.assert_array_equal(restored.b, reference.b)

    with pytest.raises(ShapeMismatchError):
        AffineTransform.from_dict({"q": 2, "a": [1.0, 0.0, 0.0], "b": [0.0, 0.0]})
    with pytest.raises(ContractViolationError):
        AffineTransform.from_dict({"a": [1.0]})


def test_variant_parsing():
    assert EstimatorVariant.parse("ALG3") is EstimatorVariant.HYBRID
    assert EstimatorVariant.parse("gleser-watson").method is Method.GLESER_WATSON
    assert EstimatorVariant.DENOISED.denoise
    with pytest.raises(ContractViolationError):
        EstimatorVariant.parse("alg4")


def _scrambled_eig(p: int):
    """sym_eig with the p leading eigenvectors reversed and every other sign flipped."""
    def scrambled(s):
        eig = sym_eig(s)
        order = np.concatenate([np.arange(p)[::-1], np.arange(p, eig.dim)])
        signs = np.where(np.arange(eig.dim) % 2 == 0, -1.0, 1.0)
        return EigenResult(values=eig.values[order], vectors=eig.vectors[:, order] * signs)
    return scrambled


@pytest.mark.parametrize("gram_direct_max_n", [512, 0])
def test_estimates_ignore_eigenvector_sign_and_order(monkeypatch, reference, gram_direct_max_n):
    _, x, y = make_pair(reference, n=40, sigma=4.0, seed=12)
    expected = {v: fit_variant(v, x, y, gram_direct_max_n=gram_direct_max_n) for v in EstimatorVariant}

    monkeypatch.setattr("sensor_calib_tools.estimation.estimators.sym_eig", _scrambled_eig(x.q + 1))
    for variant, before in expected.items():
        after = fit_variant(variant, x, y, gram_direct_max_n=gram_direct_max_n)
        np.testing.assert_allclose(after.transform.a, before.transform.a, rtol=1e-9, atol=1e-9)
        np.testing.assert_allclose(after.transform.b, before.transform.b, rtol=1e-9, atol=1e-9)
        np.testing.assert_allclose(after.theta_e.values, before.theta_e.values, rtol=1e-9, atol=1e-9)


def test_full_rank_hybrid_ignores_null_space_order(monkeypatch, reference):
    """The zero eigenvalues of the Gram are tied; any order of their vectors keeps Θ = X."""
    _, x, y = make_pair(reference, n=24, sigma=2.0, seed=3)

    def shuffled(s):
        eig = sym_eig(s)
        order = np.concatenate([np.arange(6), np.arange(6, eig.dim)[::-1]])
        return EigenResult(values=eig.values[order], vectors=-eig.vectors[:, order])

    monkeypatch.setattr("sensor_calib_tools.estimation.estimators.sym_eig", shuffled)
    hybrid = fit_hybrid(x, y, denoise_rank=x.n)
    np.testing.assert_allclose(hybrid.theta_e.values, x.values, atol=1e-8)


@pytest.mark.parametrize("variant", list(EstimatorVariant))
def test_regression_on_own_origins_is_stationary(reference, variant):
    _, x, y = make_pair(reference, n=50, sigma=3.0, seed=21)
    result = fit_variant(variant, x, y)
    theta = augment(result.theta_e).values
    ya = augment(y)
    bmat = np.linalg.solve(theta @ theta.T, theta @ ya.values.T).T

    gradient = grad_f_bmat(augment(x), ya, theta, bmat)
    assert np.linalg.norm(gradient) <= 1e-6 * np.linalg.norm(ya.values)
    if variant in (EstimatorVariant.DENOISED, EstimatorVariant.LEAST_SQUARES):
        np.testing.assert_allclose(result.transform.to_augmented().bmat, bmat, rtol=1e-8, atol=1e-8)


@pytest.mark.slow
def test_noiseless_recovery_many_instances():
    for trial in range(200):
        q = 1 + trial % 3
        truth = random_transform(q, seed=1000 + trial)
        n = 2 * (q + 1) + trial % 40
        _, x, y = make_pair(truth, n=n, seed=trial)
        for fit in (lambda a, b: fit_gleser_watson(a, b, denoise=True), fit_least_squares, fit_hybrid):
            result = fit(x, y)
            np.testing.assert_allclose(result.transform.a, truth.a, rtol=0.0, atol=1e-8,
                                       err_msg=f"trial {trial}, {result.method.value}")
            np.testing.assert_allclose(result.transform.b, truth.b, rtol=0.0, atol=1e-8,
                                       err_msg=f"trial {trial}, {result.method.value}")


@pytest.mark.slow
def test_full_rank_hybrid_equals_least_squares_many_instances():
    for trial in range(100):
        q = 1 + trial % 3
        _, x, y = make_pair(random_transform(q, seed=trial), n=10 + trial % 50, sigma=2.0, seed=500 + trial)
        ls = fit_least_squares(x, y)
        for gram_direct_max_n in (512, 0):
            hybrid = fit_hybrid(x, y, denoise_rank=x.n, gram_direct_max_n=gram_direct_max_n)
            np.testing.assert_array_equal(hybrid.transform.a, ls.transform.a)
            np.testing.assert_array_equal(hybrid.transform.b, ls.transform.b)
            np.testing.assert_allclose(hybrid.theta_e.values, x.values, rtol=0.0, atol=1e-8,
                                       err_msg=f"trial {trial}, path limit {gram_direct_max_n}")
        direct = fit_gleser_watson(x, y, gram_direct_max_n=512)
        reduced = fit_gleser_watson(x, y, gram_direct_max_n=0)
        np.testing.assert_allclose(reduced.transform.a, direct.transform.a, rtol=1e-8, atol=1e-8,
                                   err_msg=f"trial {trial}")
