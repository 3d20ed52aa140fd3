"""Dense symmetric linear algebra for Laplacians.

Symmetric matrices are plain ``float64`` ndarrays validated by
:func:`as_symmetric`.  Pseudoinverses of connected Laplacians use the rank-one
shift ``L+ = (L + J/n)^-1 - J/n`` rather than an SVD.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg

from .errors import (
    Disconnected,
    NotLaplacian,
    NotPositiveDefinite,
    NotSymmetric,
    SingularL3,
    SingularShift,
)

SYMMETRY_TOL = 1e-12
PIVOT_TOL = 1e-12
ROW_SUM_TOL = 1e-9


def as_symmetric(A, name: str = "matrix") -> np.ndarray:
    """Return ``A`` as a symmetric float array.

    Asymmetry below ``SYMMETRY_TOL`` is averaged away; anything larger is an
    error, as are non-finite entries.
    """
    A = np.array(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NotSymmetric(f"{name} must be square, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise NotSymmetric(f"{name} has non-finite entries")
    if A.size:
        asym = np.max(np.abs(A - A.T))
        if asym >= SYMMETRY_TOL:
            raise NotSymmetric(f"{name} asymmetric by {asym:.3g}")
    return (A + A.T) / 2


def cholesky(A) -> np.ndarray:
    """Lower Cholesky factor, rejecting pivots below ``PIVOT_TOL * max|diag|``."""
    A = as_symmetric(A)
    n = A.shape[0]
    if n == 0:
        return A.copy()
    scale = np.max(np.abs(np.diag(A)))
    try:
        C = scipy.linalg.cholesky(A, lower=True)
    except np.linalg.LinAlgError:
        raise NotPositiveDefinite("non-positive pivot during factorization") from None
    pivots = np.diag(C) ** 2
    if scale == 0 or np.min(pivots) <= PIVOT_TOL * scale:
        raise NotPositiveDefinite(f"pivot {np.min(pivots):.3g} below tolerance")
    return C


def solve_spd(A, B) -> np.ndarray:
    """Solve ``A X = B`` for symmetric positive definite ``A``."""
    C = cholesky(A)
    B = np.asarray(B, dtype=float)
    return scipy.linalg.cho_solve((C, True), B)


def spd_inverse(A) -> np.ndarray:
    A = np.asarray(A, dtype=float)
    X = solve_spd(A, np.eye(A.shape[0]))
    return (X + X.T) / 2


def _check_laplacian(L: np.ndarray) -> None:
    if L.size and np.max(np.abs(L.sum(axis=1))) > ROW_SUM_TOL * max(1.0, np.max(np.abs(L))):
        raise NotLaplacian("row sums are not zero")


def laplacian_pseudoinverse(L) -> np.ndarray:
    """Moore-Penrose inverse of the Laplacian of a connected graph."""
    L = as_symmetric(L, "Laplacian")
    _check_laplacian(L)
    n = L.shape[0]
    if n == 0:
        raise Disconnected("empty graph")
    J = np.full((n, n), 1.0 / n)
    try:
        X = spd_inverse(L + J)
    except NotPositiveDefinite:
        raise Disconnected("Laplacian has nullity > 1") from None
    return X - J


def shifted_laplacian_pseudoinverse(a: float, b: float, L) -> np.ndarray:
    """Moore-Penrose inverse of ``aL + bI - (b/n)J``, i.e. ``(aL+bI)^-1 - J/(bn)``."""
    if a == 0 or b == 0:
        raise SingularShift("a and b must be nonzero")
    L = as_symmetric(L, "Laplacian")
    n = L.shape[0]
    S = a * L + b * np.eye(n)
    eig = np.linalg.eigvalsh(S)
    if np.min(np.abs(eig)) <= PIVOT_TOL * np.max(np.abs(eig)):
        raise SingularShift("aL + bI is singular")
    X = np.linalg.solve(S, np.eye(n))
    X = (X + X.T) / 2
    return X - np.full((n, n), 1.0 / (b * n))


@dataclass(frozen=True)
class BlockOneInverse:
    """2x2 block {1}-inverse of a partitioned Laplacian ``[[L1, L2], [L2^T, L3]]``."""

    top_left: np.ndarray
    top_right: np.ndarray
    bottom_right: np.ndarray

    @property
    def sizes(self) -> tuple[int, int]:
        return self.top_left.shape[0], self.bottom_right.shape[0]

    def assemble(self) -> np.ndarray:
        return np.block([[self.top_left, self.top_right],
                         [self.top_right.T, self.bottom_right]])


def one_inverse_blocks(L1, L2, L3, m_pinv: Optional[np.ndarray] = None) -> BlockOneInverse:
    """Block {1}-inverse built from the Schur complement ``M = L1 - L2 L3^-1 L2^T``.

    ``m_pinv`` may supply ``M+`` in closed form; otherwise it is computed as a
    Laplacian pseudoinverse (a Schur complement of a connected Laplacian is
    again a connected Laplacian).
    """
    L1 = as_symmetric(L1, "L1")
    L3 = as_symmetric(L3, "L3")
    L2 = np.asarray(L2, dtype=float).reshape(L1.shape[0], L3.shape[0])
    _check_laplacian(np.block([[L1, L2], [L2.T, L3]]))
    try:
        L3_inv = spd_inverse(L3)
    except NotPositiveDefinite:
        raise SingularL3("L3 is singular") from None
    K = L2 @ L3_inv  # L2 L3^-1
    if m_pinv is None:
        M = as_symmetric(L1 - K @ L2.T, "Schur complement")
        m_pinv = laplacian_pseudoinverse(M)
    top_right = -m_pinv @ K
    bottom_right = L3_inv + K.T @ m_pinv @ K
    return BlockOneInverse(m_pinv, top_right, (bottom_right + bottom_right.T) / 2)


def resistance_from_inverse(X) -> np.ndarray:
    """``r_ij = x_ii + x_jj - x_ij - x_ji`` for any {1}-inverse ``X``."""
    X = np.asarray(X, dtype=float)
    d = np.diag(X)
    R = d[:, None] + d[None, :] - X - X.T
    np.fill_diagonal(R, 0.0)
    return R


def penrose_residuals(A, X) -> dict[str, float]:
    """Infinity-norm residuals of the four Penrose equations."""
    A = np.asarray(A, dtype=float)
    X = np.asarray(X, dtype=float)
    AX, XA = A @ X, X @ A

    def norm(E):
        return float(np.max(np.abs(E))) if E.size else 0.0

    return {
        "AXA=A": norm(AX @ A - A),
        "XAX=X": norm(XA @ X - X),
        "AX sym": norm(AX - AX.T),
        "XA sym": norm(XA - XA.T),
    }
