"""
Affine transform estimators between two noisy measurement spaces.

All estimators lift both inputs with an exact augmentation row, estimate a free
p×p matrix B, record how far its last row strays from (0, ..., 0, 1) and then
slice A and b out of it.

- fit_gleser_watson: origins from the p leading eigenvectors of XᵀX + YᵀY,
  optionally with the augmentation row of the origins reset to exact ones
  (denoising), then B = YΘᵀ(ΘΘᵀ)⁻¹.
- fit_least_squares: B = YXᵀ(XXᵀ)⁻¹ with Θ = X.
- fit_hybrid: the least-squares B with origins from the eigenvector projection.
"""

from typing import Any, Dict, Optional, Tuple

import numpy as np

from ..core.errors import ContractViolationError, ShapeMismatchError, SingularMatrixError
from ..core.logger import get_logger
from ..numerics.kernel import Matrix, solve_spd, sym_eig
from .augment import augment, deaugment_transform
from .models import (
    AffineTransform,
    AugmentedData,
    AugmentedTransform,
    CalibrationResult,
    DataMatrix,
    EstimatorVariant,
    Method,
)

logger = get_logger(__name__)

# Gram matrices up to this many samples are decomposed directly (n×n);
# larger ones go through the equivalent 2p×2p problem
GRAM_DIRECT_MAX_N = 512
ROW_DEVIATION_WARN = 1e-3
ZERO_EIGEN_RTOL = 1e-12


def _check_pair(x: DataMatrix, y: DataMatrix) -> None:
    if x.values.shape != y.values.shape:
        raise ShapeMismatchError(
            f"X and Y must have the same shape, got {x.values.shape} and {y.values.shape}"
        )
    p = x.q + 1
    if x.n < 2 * p:
        raise ContractViolationError(f"Estimation needs n >= 2p = {2 * p} samples, got n={x.n}")


def leading_subspace(
    xa: AugmentedData,
    ya: AugmentedData,
    k: int,
    gram_direct_max_n: int = GRAM_DIRECT_MAX_N,
) -> Tuple[Matrix, Dict[str, Any]]:
    """
    Orthonormal n×m basis U of the k leading eigenvectors of XᵀX + YᵀY.

    For n ≤ gram_direct_max_n the n×n Gram matrix is decomposed directly.
    Above that, the eigenpairs of Z·Zᵀ with Z = [X; Y] (2p×2p) give the same
    subspace as right singular vectors Zᵀw/√λ. Eigenvalues below 1e-12·λ_max are
    treated as zero there; their eigenvectors are orthogonal to every row of X
    and Y, so m = min(k, rank) columns span exactly what UUᵀXᵀ needs.

    Returns:
        (U, info) where info names the path and the retained eigenvalues
    """
    n = xa.n
    if not 1 <= k <= n:
        raise ContractViolationError(f"Denoising rank must be in 1..{n}, got {k}")

    if n <= gram_direct_max_n:
        gram = xa.values.T @ xa.values + ya.values.T @ ya.values
        eig = sym_eig(0.5 * (gram + gram.T))
        return eig.vectors[:, :k], {"eigen_path": "direct", "eigenvalues": eig.values[:k].tolist()}

    z = np.vstack([xa.values, ya.values])
    eig = sym_eig(z @ z.T)
    floor = ZERO_EIGEN_RTOL * max(float(eig.values[0]), 0.0)
    rank = int(np.count_nonzero(eig.values > floor))
    m = min(k, rank)
    basis = (z.T @ eig.vectors[:, :m]) / np.sqrt(eig.values[:m])
    return basis, {"eigen_path": "reduced", "eigenvalues": eig.values[:m].tolist()}


def _project(basis: Matrix, xa: AugmentedData) -> Matrix:
    """Θ = (U·Uᵀ·Xᵀ)ᵀ without forming the n×n projector."""
    return (basis @ (basis.T @ xa.values.T)).T


def _regress(y: Matrix, theta: Matrix) -> Tuple[Matrix, float]:
    """B = YΘᵀ(ΘΘᵀ)⁻¹, computed as Bᵀ = (ΘΘᵀ)⁻¹ΘYᵀ by Cholesky."""
    gram = theta @ theta.T
    gram = 0.5 * (gram + gram.T)
    try:
        bmat_t = solve_spd(gram, theta @ y.T)
    except SingularMatrixError as e:
        raise SingularMatrixError(
            "Origin Gram matrix is singular; provide more samples or samples that "
            "span all feature directions",
            e.pivot_index,
            e.pivot,
        ) from e
    return bmat_t.T, float(np.linalg.cond(gram))


def _extract(bmat: Matrix, method: Method) -> Tuple[AffineTransform, float]:
    """Record the last-row deviation of a free B, then slice out (A, b)."""
    p = bmat.shape[0]
    unit_row = np.zeros(p)
    unit_row[-1] = 1.0
    deviation = float(np.max(np.abs(bmat[-1] - unit_row)))
    logger.debug(f"{method.value}: augmentation-row deviation {deviation:.3e}")
    if deviation > ROW_DEVIATION_WARN:
        logger.warning(
            f"{method.value}: estimated B last row deviates from (0,...,0,1) by "
            f"{deviation:.3e}; the affine model may not hold for this data"
        )
    fixed = bmat.copy()
    fixed[-1] = unit_row
    return deaugment_transform(AugmentedTransform(fixed)), deviation


def fit_gleser_watson(
    x: DataMatrix,
    y: DataMatrix,
    denoise: bool = True,
    gram_direct_max_n: int = GRAM_DIRECT_MAX_N,
) -> CalibrationResult:
    """
    Augmented Gleser–Watson estimate of the transform and the origins.

    Args:
        x: Measurements of system 1 (q×n)
        y: Measurements of system 2 (q×n), column-aligned with x
        denoise: Reset the origins' augmentation row to exact ones before the
            regression step; False reproduces the plain augmented estimator
        gram_direct_max_n: Largest n decomposed as an n×n Gram matrix

    Returns:
        CalibrationResult with method GLESER_WATSON and denoise_rank p

    Raises:
        ShapeMismatchError: x and y differ in shape
        ContractViolationError: n < 2p
        SingularMatrixError: ΘΘᵀ is singular
    """
    _check_pair(x, y)
    xa, ya = augment(x), augment(y)
    p = xa.p
    basis, info = leading_subspace(xa, ya, p, gram_direct_max_n)
    theta = _project(basis, xa)
    if denoise:
        theta[-1, :] = 1.0

    bmat, cond = _regress(ya.values, theta)
    transform, deviation = _extract(bmat, Method.GLESER_WATSON)
    info.update(augmentation_row_deviation=deviation, gram_condition=cond)
    return CalibrationResult(
        transform=transform,
        theta_e=DataMatrix(theta[:-1], apply_only=True),
        method=Method.GLESER_WATSON,
        denoise_rank=p,
        denoise=denoise,
        diagnostics=info,
    )


def fit_least_squares(x: DataMatrix, y: DataMatrix) -> CalibrationResult:
    """
    Least-squares transform B = YXᵀ(XXᵀ)⁻¹ on augmented data, origins Θ = X.

    Raises:
        ShapeMismatchError: x and y differ in shape
        ContractViolationError: n < 2p
        SingularMatrixError: XXᵀ is singular
    """
    _check_pair(x, y)
    xa, ya = augment(x), augment(y)
    bmat, cond = _regress(ya.values, xa.values)
    transform, deviation = _extract(bmat, Method.LEAST_SQUARES)
    return CalibrationResult(
        transform=transform,
        theta_e=DataMatrix(x.values, apply_only=True),
        method=Method.LEAST_SQUARES,
        denoise_rank=0,
        diagnostics={"augmentation_row_deviation": deviation, "gram_condition": cond},
    )


def fit_hybrid(
    x: DataMatrix,
    y: DataMatrix,
    denoise_rank: Optional[int] = None,
    gram_direct_max_n: int = GRAM_DIRECT_MAX_N,
) -> CalibrationResult:
    """
    Least-squares transform combined with eigenvector-projected origins.

    Args:
        x: Measurements of system 1 (q×n)
        y: Measurements of system 2 (q×n)
        denoise_rank: Leading eigenvectors kept for the origin projection,
            1..n, default p. Keeping all of them returns Θ_E = X.
        gram_direct_max_n: Largest n decomposed as an n×n Gram matrix
    """
    _check_pair(x, y)
    xa, ya = augment(x), augment(y)
    rank = xa.p if denoise_rank is None else int(denoise_rank)

    bmat, cond = _regress(ya.values, xa.values)
    transform, deviation = _extract(bmat, Method.HYBRID)

    basis, info = leading_subspace(xa, ya, rank, gram_direct_max_n)
    theta = _project(basis, xa)
    info.update(augmentation_row_deviation=deviation, gram_condition=cond)
    return CalibrationResult(
        transform=transform,
        theta_e=DataMatrix(theta[:-1], apply_only=True),
        method=Method.HYBRID,
        denoise_rank=rank,
        diagnostics=info,
    )


def fit_variant(
    variant: EstimatorVariant,
    x: DataMatrix,
    y: DataMatrix,
    denoise_rank: Optional[int] = None,
    gram_direct_max_n: int = GRAM_DIRECT_MAX_N,
) -> CalibrationResult:
    """Run the estimator configuration named by ``variant``."""
    if variant.method is Method.GLESER_WATSON:
        return fit_gleser_watson(x, y, denoise=variant.denoise, gram_direct_max_n=gram_direct_max_n)
    if variant.method is Method.LEAST_SQUARES:
        return fit_least_squares(x, y)
    return fit_hybrid(x, y, denoise_rank=denoise_rank, gram_direct_max_n=gram_direct_max_n)
