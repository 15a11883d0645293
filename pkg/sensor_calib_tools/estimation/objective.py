"""
Negative log-likelihood objective of the errors-in-variables model and its gradients.

With X = Θ + M and Y = B·Θ + N, isotropic Gaussian noise of variance σ² and
p×n augmented matrices, the joint likelihood is

    (2πσ²)^(-n·p) · exp(-f / (2σ²)),
    f(X, Y, Θ) = tr[(X − Θ)(X − Θ)ᵀ] + tr[(Y − BΘ)(Y − BΘ)ᵀ].

σ² and the normalization constant never enter an estimator; only f does.
Arguments may be the augmented wrapper types or plain matrices, so that
finite-difference checks can perturb every entry, the augmentation row included.
"""

from typing import Tuple, Union

import numpy as np

from ..core.errors import ShapeMismatchError
from ..numerics.kernel import Matrix, as_matrix
from .models import AugmentedData, AugmentedTransform

DataLike = Union[AugmentedData, Matrix]
TransformLike = Union[AugmentedTransform, Matrix]


def _unwrap(x: DataLike, y: DataLike, theta: DataLike,
            bmat: TransformLike) -> Tuple[Matrix, Matrix, Matrix, Matrix]:
    xs = as_matrix(x.values if isinstance(x, AugmentedData) else x, "X")
    ys = as_matrix(y.values if isinstance(y, AugmentedData) else y, "Y")
    ts = as_matrix(theta.values if isinstance(theta, AugmentedData) else theta, "Theta")
    bs = as_matrix(bmat.bmat if isinstance(bmat, AugmentedTransform) else bmat, "B")
    if not xs.shape == ys.shape == ts.shape:
        raise ShapeMismatchError(
            f"X, Y and Theta must share a shape, got {xs.shape}, {ys.shape}, {ts.shape}"
        )
    p = xs.shape[0]
    if bs.shape != (p, p):
        raise ShapeMismatchError(f"B must be {p}x{p}, got {bs.shape}")
    return xs, ys, ts, bs


def objective_f(x: DataLike, y: DataLike, theta: DataLike, bmat: TransformLike) -> float:
    """f = ||X − Θ||²_F + ||Y − BΘ||²_F."""
    xs, ys, ts, bs = _unwrap(x, y, theta, bmat)
    rx = xs - ts
    ry = ys - bs @ ts
    return float(np.sum(rx * rx) + np.sum(ry * ry))


def grad_f_theta(x: DataLike, y: DataLike, theta: DataLike, bmat: TransformLike) -> Matrix:
    """∇_Θ f = −2(X − Θ) − 2Bᵀ(Y − BΘ)."""
    xs, ys, ts, bs = _unwrap(x, y, theta, bmat)
    return -2.0 * (xs - ts) - 2.0 * bs.T @ (ys - bs @ ts)


def grad_f_bmat(x: DataLike, y: DataLike, theta: DataLike, bmat: TransformLike) -> Matrix:
    """∇_B f = −2(Y − BΘ)Θᵀ."""
    _, ys, ts, bs = _unwrap(x, y, theta, bmat)
    return -2.0 * (ys - bs @ ts) @ ts.T
