"""
Augmented (homogeneous) lifting of data and transforms.
"""

import numpy as np

from ..core.errors import ShapeMismatchError
from .models import AffineTransform, AugmentedData, AugmentedTransform, DataMatrix


def augment(x: DataMatrix) -> AugmentedData:
    """Append a row of exact ones: q×n -> p×n with p = q+1."""
    lifted = np.empty((x.q + 1, x.n))
    lifted[:x.q] = x.values
    lifted[x.q] = 1.0
    return AugmentedData(lifted)


def deaugment(x: AugmentedData, apply_only: bool = True) -> DataMatrix:
    """Drop the augmentation row."""
    return DataMatrix(x.values[:-1], apply_only=apply_only)


def deaugment_transform(bmat: AugmentedTransform) -> AffineTransform:
    """Split B = [A b; 0ᵀ 1] into (A, b)."""
    q = bmat.p - 1
    return AffineTransform(bmat.bmat[:q, :q], bmat.bmat[:q, q])


def apply_transform(t: AffineTransform, x: DataMatrix) -> DataMatrix:
    """
    Map every sample column through T(x) = A·x + b.

    Raises:
        ShapeMismatchError: transform and data dimensions differ
    """
    if t.q != x.q:
        raise ShapeMismatchError(f"Transform has q={t.q} but data has q={x.q}")
    mapped = t.a @ x.values + t.b[:, None]
    return DataMatrix(mapped, apply_only=x.apply_only)
