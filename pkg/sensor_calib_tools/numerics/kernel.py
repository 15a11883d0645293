"""
Dense linear-algebra kernel for the estimators.

A ``Matrix`` here is a 2-D ``float64`` numpy array in C (row-major) order.
The kernel provides a symmetric eigendecomposition (cyclic Jacobi), the
leading-eigenvector selection the estimators need, and an SPD solve through a
Cholesky factorization with an explicit pivot threshold. All functions are pure.
"""

from dataclasses import dataclass
import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.linalg import cho_solve
from scipy.linalg.lapack import dpotrf

from ..core.errors import ContractViolationError, ConvergenceError, SingularMatrixError

Matrix = NDArray[np.float64]

MAX_SWEEPS = 100
OFF_DIAGONAL_TOL = 1e-12
SYMMETRY_TOL = 1e-9
PIVOT_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class EigenResult:
    """Eigenpairs of a symmetric matrix, eigenvalues in descending order.

    Column ``i`` of ``vectors`` is the unit eigenvector paired with ``values[i]``.
    Each eigenvector's largest-magnitude entry is positive.
    """
    values: NDArray[np.float64]
    vectors: Matrix

    @property
    def dim(self) -> int:
        return int(self.values.shape[0])

    def reconstruct(self) -> Matrix:
        """Return V·diag(d)·Vᵀ."""
        return (self.vectors * self.values) @ self.vectors.T


def as_matrix(data: ArrayLike, name: str = "matrix") -> Matrix:
    """
    Validate external input and return it as a C-ordered float64 matrix.

    Raises:
        ContractViolationError: if the input is not 2-D, is empty or holds NaN/Inf
    """
    arr = np.ascontiguousarray(data, dtype=np.float64)
    if arr.ndim != 2:
        raise ContractViolationError(f"{name} must be 2-D, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ContractViolationError(f"{name} must be non-empty, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ContractViolationError(f"{name} contains non-finite entries")
    return arr


def _check_symmetric(s: Matrix, name: str) -> None:
    if s.shape[0] != s.shape[1]:
        raise ContractViolationError(f"{name} must be square, got shape {s.shape}")
    scale = max(1.0, float(np.linalg.norm(s)))
    asym = float(np.linalg.norm(s - s.T))
    if asym > SYMMETRY_TOL * scale:
        raise ContractViolationError(
            f"{name} is not symmetric: ||S - S^T||_F = {asym:.3e}"
        )


def _off_norm(a: Matrix) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def _mix_rows(m: Matrix, ip: slice, iq: slice, c: NDArray[np.float64], s: NDArray[np.float64]) -> None:
    """Rotate each row pair (p, q) by (c, s), then swap the two rows."""
    cc, ss = c[:, None], s[:, None]
    rows_p, rows_q = m[ip], m[iq]
    new_q = cc * rows_p - ss * rows_q
    m[ip] = ss * rows_p + cc * rows_q
    m[iq] = new_q


def _mix_cols(m: Matrix, ip: slice, iq: slice, c: NDArray[np.float64], s: NDArray[np.float64]) -> None:
    cols_p, cols_q = m[:, ip], m[:, iq]
    new_q = c * cols_p - s * cols_q
    m[:, ip] = s * cols_p + c * cols_q
    m[:, iq] = new_q


def _rotate(a: Matrix, vt: Matrix, start: int, skip: float) -> None:
    """
    One round of Jacobi rotations on the adjacent pairs (start, start+1),
    (start+2, start+3), ... followed by a swap within every pair.

    Alternating start 0 and 1 for dim rounds meets every index pair exactly
    once. Pairs with |a_pq| <= skip are only swapped. ``vt`` holds the
    accumulated eigenvectors as rows; both arrays are updated in place.
    """
    half = (a.shape[0] - start) // 2
    if half == 0:
        return
    p = np.arange(start, start + 2 * half, 2)
    q = p + 1
    apq = a[p, q]
    active = np.abs(apq) > skip
    theta = (a[q, q] - a[p, p]) / (2.0 * np.where(active, apq, 1.0))
    t = np.where(theta >= 0.0, 1.0, -1.0) / (np.abs(theta) + np.hypot(theta, 1.0))
    t = np.where(active, t, 0.0)
    c = 1.0 / np.hypot(t, 1.0)
    s = t * c

    ip, iq = slice(start, start + 2 * half, 2), slice(start + 1, start + 2 * half, 2)
    _mix_rows(a, ip, iq, c, s)
    _mix_cols(a, ip, iq, c, s)
    a[p[active], q[active]] = 0.0
    a[q[active], p[active]] = 0.0
    _mix_rows(vt, ip, iq, c, s)


def sym_eig(s: ArrayLike) -> EigenResult:
    """
    Full eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps run until the off-diagonal Frobenius norm drops to
    ``1e-12 * ||S||_F``, for at most 100 sweeps. Entries already at or below
    that tolerance divided by dim(S) are not rotated (threshold Jacobi).

    Args:
        s: Symmetric matrix (symmetric within 1e-9 relative)

    Returns:
        EigenResult with descending eigenvalues and orthonormal eigenvectors

    Raises:
        ContractViolationError: non-square, asymmetric or non-finite input
        ConvergenceError: the sweep cap was reached
    """
    s = as_matrix(s, "S")
    _check_symmetric(s, "S")
    n = s.shape[0]
    a = 0.5 * (s + s.T)
    vt = np.eye(n)

    scale = float(np.linalg.norm(a))
    tol = OFF_DIAGONAL_TOL * scale
    # Entries at or below tol/n cannot keep the off-diagonal norm above tol
    skip = tol / n
    off = _off_norm(a)
    sweeps = 0
    while off > tol:
        if sweeps >= MAX_SWEEPS:
            raise ConvergenceError(f"Jacobi eigensolver did not converge in {MAX_SWEEPS} sweeps", off)
        for r in range(n):
            _rotate(a, vt, r % 2, skip)
        a = 0.5 * (a + a.T)
        off = _off_norm(a)
        sweeps += 1

    values = np.diag(a).copy()
    order = np.argsort(-values, kind="stable")
    values = values[order]
    vectors = vt.T[:, order]

    # Sign convention: largest-magnitude entry of each eigenvector is positive
    lead = np.argmax(np.abs(vectors), axis=0)
    signs = np.where(vectors[lead, np.arange(n)] < 0.0, -1.0, 1.0)
    vectors = np.ascontiguousarray(vectors * signs)
    return EigenResult(values=values, vectors=vectors)


def top_k_eigvecs(s: ArrayLike, k: int) -> Matrix:
    """
    Eigenvectors of the k largest eigenvalues, in descending order.

    Raises:
        ContractViolationError: k outside 1..dim(S)
    """
    s = as_matrix(s, "S")
    if not 1 <= k <= s.shape[0]:
        raise ContractViolationError(f"k must be in 1..{s.shape[0]}, got {k}")
    return np.ascontiguousarray(sym_eig(s).vectors[:, :k])


def solve_spd(g: ArrayLike, rhs: ArrayLike) -> NDArray[np.float64]:
    """
    Solve G·Z = RHS for symmetric positive definite G via Cholesky.

    G is declared singular when a pivot (squared diagonal of the Cholesky
    factor) falls below ``1e-12 * trace(G) / dim``.

    Args:
        g: Square SPD matrix
        rhs: Right-hand side, a vector or a matrix with dim(G) rows

    Returns:
        Z with the same shape as rhs

    Raises:
        ContractViolationError: shape problems or non-finite input
        SingularMatrixError: singular or indefinite G, carrying the pivot index
    """
    g = as_matrix(g, "G")
    if g.shape[0] != g.shape[1]:
        raise ContractViolationError(f"G must be square, got shape {g.shape}")
    b = np.asarray(rhs, dtype=np.float64)
    if b.ndim not in (1, 2) or b.shape[0] != g.shape[0]:
        raise ContractViolationError(
            f"rhs must have {g.shape[0]} rows, got shape {b.shape}"
        )
    if not np.all(np.isfinite(b)):
        raise ContractViolationError("rhs contains non-finite entries")

    dim = g.shape[0]
    threshold = PIVOT_TOL * float(np.trace(g)) / dim
    if threshold <= 0.0:
        raise SingularMatrixError("Matrix has non-positive trace", 0, float(np.trace(g)))

    factor, info = dpotrf(g, lower=1, clean=1)
    if info < 0:
        raise ContractViolationError(f"dpotrf rejected argument {-info}")
    if info > 0:
        raise SingularMatrixError("Matrix is not positive definite", info - 1, float("nan"))

    pivots = np.diag(factor) ** 2
    low = np.flatnonzero(pivots < threshold)
    if low.size:
        idx = int(low[0])
        raise SingularMatrixError("Matrix is numerically singular", idx, float(pivots[idx]))

    return cho_solve((factor, True), b, check_finite=False)
