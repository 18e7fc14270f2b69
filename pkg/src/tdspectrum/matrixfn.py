"""Matrix exponential, eigendecomposition, and the matrix Lambert W.

The matrix Lambert W is evaluated through diagonalization: scalar branches are
applied eigenvalue by eigenvalue, so a branch index is assigned to each
eigenvalue (in dominance sort order) rather than to the matrix as a whole.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .exceptions import DefectiveMatrixError
from .lambertw import lambert_w

__all__ = [
    "EigenDecomposition",
    "expm",
    "eig",
    "matrix_lambert_w",
    "w_times_exp_w",
    "hybrid_branches",
    "ZERO_EIGENVALUE_TOL",
    "DEFECTIVE_CONDITION_LIMIT",
]

# eigenvalues closer to 0 than this are pinned to the principal branch
ZERO_EIGENVALUE_TOL = 1e-8
# beyond this eigenvector condition number a diagonalization-based matrix
# function has no accuracy left
DEFECTIVE_CONDITION_LIMIT = 1e8


@dataclass
class EigenDecomposition:
    values: np.ndarray       # sorted: decreasing real part, then increasing imag
    vectors: np.ndarray      # columns are right eigenvectors, same order
    condition: float


def expm(M) -> np.ndarray:
    """Matrix exponential (scaling-and-squaring with Pade approximants)."""
    M = np.asarray(M, dtype=complex)
    if not np.all(np.isfinite(M)):
        raise ValueError("expm requires finite entries")
    with np.errstate(over="ignore", invalid="ignore"):
        E = scipy.linalg.expm(M)
    if not np.all(np.isfinite(E)):
        raise ArithmeticError("expm overflowed the representable range")
    return E


def _eig_2x2(M):
    tr = M[0, 0] + M[1, 1]
    det = M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
    disc = np.sqrt(complex(tr * tr - 4.0 * det))
    lams = np.array([(tr + disc) / 2.0, (tr - disc) / 2.0])
    scale = max(1.0, float(np.abs(M).max()))
    if abs(lams[0] - lams[1]) < 1e-14 * scale and np.abs(M - lams[0] * np.eye(2)).max() < 1e-14 * scale:
        return lams, np.eye(2, dtype=complex)
    vecs = []
    for lam in lams:
        # rows of M - lam*I are parallel at an eigenvalue; use the larger one
        r1 = np.array([M[0, 0] - lam, M[0, 1]])
        r2 = np.array([M[1, 0], M[1, 1] - lam])
        row = r1 if np.abs(r1).max() >= np.abs(r2).max() else r2
        v = np.array([-row[1], row[0]])
        nrm = np.linalg.norm(v)
        vecs.append(v / nrm if nrm > 0 else np.array([1.0, 0.0], dtype=complex))
    return lams, np.column_stack(vecs)


def eig(M) -> EigenDecomposition:
    """Full eigendecomposition, dominance-sorted; raises DefectiveMatrixError
    when the eigenvector matrix is too ill-conditioned to trust."""
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("eig requires a square matrix")
    if not np.all(np.isfinite(M)):
        raise ValueError("eig requires finite entries")
    if M.shape[0] == 2:
        values, vectors = _eig_2x2(M)
    else:
        values, vectors = np.linalg.eig(M)
    order = sorted(range(len(values)), key=lambda i: (-values[i].real, values[i].imag))
    values = values[order]
    vectors = vectors[:, order]
    condition = float(np.linalg.cond(vectors))
    if not np.isfinite(condition) or condition > DEFECTIVE_CONDITION_LIMIT:
        raise DefectiveMatrixError(
            f"eigenvector condition {condition:.3g} exceeds {DEFECTIVE_CONDITION_LIMIT:.0e}")
    return EigenDecomposition(values=values, vectors=vectors, condition=condition)


def matrix_lambert_w(branches, M) -> np.ndarray:
    """Matrix Lambert W of M with one branch index per (sorted) eigenvalue.

    Returns W = V diag(W_{k_i}(lambda_i)) V^{-1}, which satisfies
    W expm(W) = M for diagonalizable M.
    """
    M = np.asarray(M, dtype=complex)
    dec = eig(M)
    branches = list(branches)
    if len(branches) != len(dec.values):
        raise ValueError("one branch index is required per eigenvalue")
    w_vals = []
    for k, lam in zip(branches, dec.values):
        if abs(lam) < ZERO_EIGENVALUE_TOL and k != 0:
            raise ValueError(
                f"eigenvalue {lam} is (numerically) zero; only the principal "
                f"branch is defined there, got k={k}")
        w_vals.append(lambert_w(k, lam) if lam != 0 else 0j)
    V = dec.vectors
    return (V * np.asarray(w_vals)) @ np.linalg.inv(V)


def w_times_exp_w(W) -> np.ndarray:
    """The defining forward map W -> W expm(W)."""
    W = np.asarray(W, dtype=complex)
    return W @ expm(W)


def hybrid_branches(k, M) -> list:
    """Uniform branch assignment k, except eigenvalues at (numerical) zero,
    which are only reachable through the principal branch."""
    dec = eig(M)
    return [0 if abs(lam) < ZERO_EIGENVALUE_TOL else int(k) for lam in dec.values]
