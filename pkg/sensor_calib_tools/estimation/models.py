"""
Data models for affine calibration estimation.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.errors import ContractViolationError, ShapeMismatchError
from ..numerics.kernel import Matrix, as_matrix


class Method(Enum):
    """Estimator family."""
    GLESER_WATSON = "gw"
    LEAST_SQUARES = "ls"
    HYBRID = "hybrid"


class EstimatorVariant(Enum):
    """Named estimator configurations compared in simulations and board evaluations."""
    GLESER_WATSON = "gleser-watson"   # augmented, not denoised
    DENOISED = "alg1"                 # augmented, denoised
    LEAST_SQUARES = "alg2"
    HYBRID = "alg3"

    @property
    def method(self) -> Method:
        if self in (EstimatorVariant.GLESER_WATSON, EstimatorVariant.DENOISED):
            return Method.GLESER_WATSON
        if self is EstimatorVariant.LEAST_SQUARES:
            return Method.LEAST_SQUARES
        return Method.HYBRID

    @property
    def denoise(self) -> bool:
        return self is EstimatorVariant.DENOISED

    @classmethod
    def parse(cls, name: str) -> "EstimatorVariant":
        """Look up a variant by its value, case-insensitively."""
        key = name.strip().lower()
        for variant in cls:
            if variant.value == key:
                return variant
        valid = ", ".join(v.value for v in cls)
        raise ContractViolationError(f"Unknown estimator variant '{name}' (expected one of: {valid})")


def _readonly(arr: NDArray[np.float64]) -> NDArray[np.float64]:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class DataMatrix:
    """
    q×n matrix of samples from one system; column i is sample vector i.

    Estimation inputs need n ≥ 2(q+1). Data that is only transformed or
    compared (for example a single aggregated heater cycle) sets ``apply_only``.
    """
    values: Matrix
    apply_only: bool = False

    def __post_init__(self):
        values = _readonly(as_matrix(self.values, "DataMatrix").copy())
        object.__setattr__(self, "values", values)
        q, n = values.shape
        if not self.apply_only and n < 2 * (q + 1):
            raise ContractViolationError(
                f"Estimation data needs n >= 2p = {2 * (q + 1)} samples for q={q}, got n={n}"
            )

    @property
    def q(self) -> int:
        return int(self.values.shape[0])

    @property
    def n(self) -> int:
        return int(self.values.shape[1])

    @classmethod
    def from_samples(cls, rows: ArrayLike, apply_only: bool = False) -> "DataMatrix":
        """Build from an n×q array with one sample per row (the file layout)."""
        return cls(as_matrix(rows, "samples").T, apply_only=apply_only)

    def to_samples(self) -> Matrix:
        """Return the n×q sample-per-row layout."""
        return np.ascontiguousarray(self.values.T)

    def select(self, columns: ArrayLike) -> "DataMatrix":
        """Subset of sample columns, kept apply-only."""
        return DataMatrix(self.values[:, np.asarray(columns)], apply_only=True)


@dataclass(frozen=True, eq=False)
class AugmentedData:
    """p×n lifted data, p = q+1, whose last row is exactly 1."""
    values: Matrix

    def __post_init__(self):
        values = _readonly(as_matrix(self.values, "AugmentedData").copy())
        object.__setattr__(self, "values", values)
        if values.shape[0] < 2:
            raise ContractViolationError("AugmentedData needs at least one feature row")
        if not np.all(values[-1] == 1.0):
            raise ContractViolationError("AugmentedData augmentation row must be exactly 1")

    @property
    def p(self) -> int:
        return int(self.values.shape[0])

    @property
    def n(self) -> int:
        return int(self.values.shape[1])


@dataclass(frozen=True, eq=False)
class AffineTransform:
    """The calibration map T(x) = A·x + b."""
    a: Matrix
    b: NDArray[np.float64]

    def __post_init__(self):
        a = _readonly(as_matrix(self.a, "A").copy())
        b = np.array(self.b, dtype=np.float64).reshape(-1)
        if a.shape[0] != a.shape[1]:
            raise ShapeMismatchError(f"A must be square, got shape {a.shape}")
        if b.shape[0] != a.shape[0]:
            raise ShapeMismatchError(f"b must have {a.shape[0]} entries, got {b.shape[0]}")
        if not np.all(np.isfinite(b)):
            raise ContractViolationError("b contains non-finite entries")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", _readonly(b))

    @property
    def q(self) -> int:
        return int(self.a.shape[0])

    @classmethod
    def identity(cls, q: int) -> "AffineTransform":
        return cls(np.eye(q), np.zeros(q))

    def inverse(self) -> "AffineTransform":
        """(A⁻¹, −A⁻¹·b); raises on a singular A."""
        try:
            a_inv = np.linalg.inv(self.a)
        except np.linalg.LinAlgError as e:
            raise ContractViolationError(f"Transform is not invertible: {e}") from e
        return AffineTransform(a_inv, -a_inv @ self.b)

    def to_augmented(self) -> "AugmentedTransform":
        """Build B = [A b; 0ᵀ 1]."""
        q = self.q
        bmat = np.zeros((q + 1, q + 1))
        bmat[:q, :q] = self.a
        bmat[:q, q] = self.b
        bmat[q, q] = 1.0
        return AugmentedTransform(bmat)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization (A flattened row-major)."""
        return {
            "q": self.q,
            "a": [float(v) for v in self.a.reshape(-1)],
            "b": [float(v) for v in self.b],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "AffineTransform":
        """Create transform from dictionary."""
        try:
            q = int(data["q"])
            a = np.array(data["a"], dtype=np.float64)
            b = np.array(data["b"], dtype=np.float64)
        except (KeyError, TypeError, ValueError) as e:
            raise ContractViolationError(f"Invalid transform document: {e}") from e
        if a.size != q * q:
            raise ShapeMismatchError(f"Transform 'a' must hold {q * q} values, got {a.size}")
        return cls(a.reshape(q, q), b)


@dataclass(frozen=True, eq=False)
class AugmentedTransform:
    """p×p matrix B whose last row is exactly (0, ..., 0, 1)."""
    bmat: Matrix

    def __post_init__(self):
        bmat = _readonly(as_matrix(self.bmat, "B").copy())
        p = bmat.shape[0]
        if bmat.shape != (p, p) or p < 2:
            raise ShapeMismatchError(f"B must be square with p >= 2, got shape {bmat.shape}")
        expected = np.zeros(p)
        expected[-1] = 1.0
        if not np.array_equal(bmat[-1], expected):
            raise ContractViolationError("B last row must be exactly (0, ..., 0, 1)")
        object.__setattr__(self, "bmat", bmat)

    @property
    def p(self) -> int:
        return int(self.bmat.shape[0])


@dataclass(frozen=True, eq=False)
class CalibrationResult:
    """Estimated transform with the estimated origins and fit diagnostics."""
    transform: AffineTransform
    theta_e: DataMatrix
    method: Method
    denoise_rank: int
    denoise: bool = False
    diagnostics: Dict[str, Any] = field(default_factory=dict)

    @property
    def variant(self) -> EstimatorVariant:
        if self.method is Method.LEAST_SQUARES:
            return EstimatorVariant.LEAST_SQUARES
        if self.method is Method.HYBRID:
            return EstimatorVariant.HYBRID
        return EstimatorVariant.DENOISED if self.denoise else EstimatorVariant.GLESER_WATSON

    def to_dict(self) -> Dict[str, Any]:
        """Transform document: {q, a, b, method, denoise_rank, denoise}."""
        data = self.transform.to_dict()
        data["method"] = self.method.value
        data["denoise_rank"] = int(self.denoise_rank)
        data["denoise"] = bool(self.denoise)
        return data


def same_shape(first: Optional[np.ndarray], second: Optional[np.ndarray], what: str) -> None:
    """Raise ShapeMismatchError unless both arrays have the same shape."""
    if first is None or second is None:
        return
    if first.shape != second.shape:
        raise ShapeMismatchError(f"{what}: shapes {first.shape} and {second.shape} differ")
