"""
Tests for the dense symmetric kernel: Jacobi eigendecomposition and SPD solves.
"""

import time

import numpy as np
import pytest

from sensor_calib_tools.core.errors import ContractViolationError, SingularMatrixError
from sensor_calib_tools.numerics.kernel import solve_spd, sym_eig, top_k_eigvecs


def _random_symmetric(dim: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    m = rng.standard_normal((dim, dim))
    return m + m.T


@pytest.mark.parametrize("dim", [2, 3, 4, 5, 8])
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_sym_eig_contracts(dim, seed):
    s = _random_symmetric(dim, seed)
    eig = sym_eig(s)

    assert eig.values.shape == (dim,)
    assert eig.vectors.shape == (dim, dim)
    assert np.all(np.diff(eig.values) <= 0), "Eigenvalues must be sorted descending"
    np.testing.assert_allclose(eig.vectors.T @ eig.vectors, np.eye(dim), atol=1e-10)
    np.testing.assert_allclose(eig.reconstruct(), s, atol=1e-9 * max(1.0, np.abs(s).max()))
    np.testing.assert_allclose(np.sum(eig.values), np.trace(s), atol=1e-9)
    np.testing.assert_allclose(np.prod(eig.values), np.linalg.det(s), rtol=1e-8, atol=1e-9)


def test_sym_eig_matches_lapack():
    s = _random_symmetric(6, 7)
    expected = np.sort(np.linalg.eigvalsh(s))[::-1]
    np.testing.assert_allclose(sym_eig(s).values, expected, atol=1e-10)


def test_sym_eig_sign_convention():
    eig = sym_eig(_random_symmetric(5, 3))
    for column in eig.vectors.T:
        assert column[np.argmax(np.abs(column))] > 0


def test_sym_eig_diagonal_and_scalar():
    eig = sym_eig(np.diag([1.0, 3.0, 2.0]))
    np.testing.assert_allclose(eig.values, [3.0, 2.0, 1.0])
    np.testing.assert_allclose(np.abs(eig.vectors), np.eye(3)[:, [1, 2, 0]])

    eig = sym_eig([[4.0]])
    assert eig.values.tolist() == [4.0]
    assert eig.vectors.tolist() == [[1.0]]


def test_sym_eig_deterministic():
    s = _random_symmetric(7, 11)
    first, second = sym_eig(s), sym_eig(s)
    assert np.array_equal(first.values, second.values)
    assert np.array_equal(first.vectors, second.vectors)


def test_sym_eig_rejects_bad_input():
    with pytest.raises(ContractViolationError):
        sym_eig(np.ones((2, 3)))
    with pytest.raises(ContractViolationError):
        sym_eig([[1.0, 2.0], [0.0, 1.0]])
    with pytest.raises(ContractViolationError):
        sym_eig([[np.nan, 0.0], [0.0, 1.0]])


def test_top_k_eigvecs():
    s = _random_symmetric(6, 5)
    full = sym_eig(s).vectors
    top = top_k_eigvecs(s, 2)
    assert top.shape == (6, 2)
    np.testing.assert_array_equal(top, full[:, :2])

    with pytest.raises(ContractViolationError):
        top_k_eigvecs(s, 0)
    with pytest.raises(ContractViolationError):
        top_k_eigvecs(s, 7)


@pytest.mark.parametrize("dim", [1, 3, 6])
def test_solve_spd_residual(dim):
    rng = np.random.default_rng(dim)
    m = rng.standard_normal((dim, dim + 4))
    g = m @ m.T + 0.1 * np.eye(dim)
    rhs = rng.standard_normal((dim, 2))

    solution = solve_spd(g, rhs)
    assert solution.shape == (dim, 2)
    np.testing.assert_allclose(g @ solution, rhs, atol=1e-10)

    vector = solve_spd(g, rhs[:, 0])
    np.testing.assert_allclose(g @ vector, rhs[:, 0], atol=1e-10)


def test_solve_spd_singular_reports_pivot():
    g = np.array([[1.0, 1.0, 0.0], [1.0, 1.0, 0.0], [0.0, 0.0, 2.0]])
    with pytest.raises(SingularMatrixError) as excinfo:
        solve_spd(g, np.ones(3))
    assert excinfo.value.pivot_index is not None
    assert excinfo.value.exit_code == 3


def test_solve_spd_shape_errors():
    with pytest.raises(ContractViolationError):
        solve_spd(np.eye(2), np.ones(3))
    with pytest.raises(ContractViolationError):
        solve_spd(np.ones((2, 3)), np.ones(2))


def _orthogonal(dim: int, seed: int) -> np.ndarray:
    q, _ = np.linalg.qr(np.random.default_rng(seed).standard_normal((dim, dim)))
    return q


@pytest.mark.slow
def test_kernel_contracts_on_many_matrices():
    rng = np.random.default_rng(2024)
    for trial in range(500):
        dim = 2 + trial % 7
        m = rng.standard_normal((dim, dim))
        s = m + m.T
        eig = sym_eig(s)
        scale = max(1.0, np.linalg.norm(s))

        assert np.linalg.norm(eig.reconstruct() - s) <= 1e-9 * scale, f"reconstruction, trial {trial}"
        assert np.linalg.norm(eig.vectors.T @ eig.vectors - np.eye(dim)) <= 1e-10, f"orthonormality, trial {trial}"
        assert abs(eig.values.sum() - np.trace(s)) <= 1e-8 * scale, f"trace, trial {trial}"
        if dim <= 4:
            det = np.linalg.det(s)
            assert abs(np.prod(eig.values) - det) <= 1e-6 * max(abs(det), 1e-12), f"determinant, trial {trial}"
        assert np.linalg.norm(top_k_eigvecs(s, dim) @ top_k_eigvecs(s, dim).T - np.eye(dim)) <= 1e-9

        g = m @ m.T + np.eye(dim)
        rhs = rng.standard_normal(dim)
        assert np.linalg.norm(g @ solve_spd(g, rhs) - rhs) <= 1e-9 * max(1.0, np.linalg.norm(rhs)), \
            f"solve residual, trial {trial}"


def test_tied_eigenvalues_projector_is_invariant():
    q = _orthogonal(5, 3)
    s = (q * np.array([3.0, 3.0, 1.0, 1.0, 0.5])) @ q.T
    s = 0.5 * (s + s.T)
    vectors = sym_eig(s).vectors

    expected = q[:, :2] @ q[:, :2].T
    np.testing.assert_allclose(vectors[:, :2] @ vectors[:, :2].T, expected, atol=1e-9)
    swapped = vectors[:, [1, 0, 3, 2, 4]]
    np.testing.assert_allclose(swapped[:, :2] @ swapped[:, :2].T, expected, atol=1e-9)
    np.testing.assert_allclose(swapped[:, :4] @ swapped[:, :4].T,
                               vectors[:, :4] @ vectors[:, :4].T, atol=1e-9)


@pytest.mark.parametrize("condition", [1e2, 1e4, 1e6])
def test_solve_spd_ill_conditioned_roundtrip(condition):
    dim = 6
    q = _orthogonal(dim, int(np.log10(condition)))
    g = (q * np.logspace(0.0, np.log10(condition), dim)) @ q.T
    g = 0.5 * (g + g.T)
    z = np.random.default_rng(1).standard_normal((dim, 3))

    recovered = solve_spd(g, g @ z)
    assert np.linalg.norm(recovered - z) <= 1e-7 * np.linalg.norm(z)
    rhs = g @ z
    assert np.linalg.norm(g @ solve_spd(g, rhs) - rhs) <= 1e-7 * np.linalg.norm(rhs)


def test_sym_eig_gram_at_direct_limit():
    """The n x n Gram of two augmented 2-feature tables at the default direct-path limit."""
    rng = np.random.default_rng(5)
    n = 512
    x = np.vstack([rng.uniform(0.0, 100.0, (2, n)), np.ones(n)])
    y = np.vstack([rng.uniform(0.0, 100.0, (2, n)), np.ones(n)])
    gram = x.T @ x + y.T @ y

    start = time.perf_counter()
    eig = sym_eig(gram)
    elapsed = time.perf_counter() - start

    assert elapsed < 30.0, f"Jacobi on a {n}x{n} Gram took {elapsed:.1f}s"
    scale = np.linalg.norm(gram)
    assert np.linalg.norm(eig.reconstruct() - gram) <= 1e-8 * scale
    np.testing.assert_allclose(eig.values[:5], np.sort(np.linalg.eigvalsh(gram))[::-1][:5], rtol=1e-9)
    assert np.all(np.abs(eig.values[5:]) <= 1e-8 * scale)
