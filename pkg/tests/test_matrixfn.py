"""Matrix exponential, eigendecomposition, and the matrix Lambert W."""
import numpy as np
import pytest
import scipy.linalg

from tdspectrum import (
    DefectiveMatrixError,
    eig,
    expm,
    hybrid_branches,
    matrix_lambert_w,
    w_times_exp_w,
)


def test_expm_known_values():
    assert np.abs(expm(np.zeros((2, 2))) - np.eye(2)).max() < 1e-15
    N = np.array([[0.0, 1.0], [0.0, 0.0]])
    assert np.abs(expm(N) - (np.eye(2) + N)).max() < 1e-15
    D = np.diag([1.0, -2.0])
    assert np.abs(expm(D) - np.diag(np.exp([1.0, -2.0]))).max() < 1e-14


def test_expm_matches_scipy_random():
    rng = np.random.default_rng(6)
    for _ in range(20):
        M = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        assert np.abs(expm(M) - scipy.linalg.expm(M)).max() < 1e-12


def test_expm_rejects_bad_input():
    with pytest.raises(ValueError):
        expm([[np.nan, 0.0], [0.0, 0.0]])
    with pytest.raises(ArithmeticError):
        expm(np.diag([1e6, 0.0]))


def test_eig_sorted_by_dominance():
    M = np.diag([-1.0, 3.0, 1.0])
    dec = eig(M)
    assert np.allclose(dec.values, [3.0, 1.0, -1.0])
    # conjugate pair: positive imaginary part last within the tie
    R = np.array([[0.0, 1.0], [-4.0, 0.0]])  # eigenvalues +-2i
    vals = eig(R).values
    assert abs(vals[0] - (-2.0j)) < 1e-12 and abs(vals[1] - 2.0j) < 1e-12


def test_eig_reconstructs_matrix():
    rng = np.random.default_rng(7)
    for n in (2, 3, 4):
        for _ in range(10):
            M = rng.normal(size=(n, n))
            dec = eig(M)
            back = dec.vectors @ np.diag(dec.values) @ np.linalg.inv(dec.vectors)
            assert np.abs(back - M).max() < 1e-9 * dec.condition


def test_eig_rejects_defective():
    with pytest.raises(DefectiveMatrixError):
        eig([[0.0, 1.0], [0.0, 0.0]])  # Jordan block
    with pytest.raises(ValueError):
        eig([[1.0, 2.0, 3.0]])


def test_eig_scalar_multiple_of_identity():
    dec = eig(2.5 * np.eye(2))
    assert np.allclose(dec.values, [2.5, 2.5])
    assert dec.condition < 2.0


def test_matrix_lambert_w_round_trip_random():
    rng = np.random.default_rng(8)
    for _ in range(30):
        M = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        branches = [int(k) for k in rng.integers(-2, 3, size=2)]
        W = matrix_lambert_w(branches, M)
        assert np.abs(w_times_exp_w(W) - M).max() < 1e-8 * (1.0 + np.abs(M).max())


def test_matrix_lambert_w_known_triangular():
    # lower-triangular W = [[0,0],[c,d]] has M = W exp(W) = [[0,0],[c e^d, d e^d]]
    W = np.array([[0.0, 0.0], [6.7636, -11.3784]])
    M = w_times_exp_w(W)
    back = matrix_lambert_w([0, -1], M)
    assert np.abs(back - W).max() < 1e-6


def test_matrix_lambert_w_zero_eigenvalue_guard():
    M = np.array([[0.0, 0.0], [1.0, -0.2]])  # eigenvalues 0 and -0.2
    matrix_lambert_w([0, -1], M)  # fine: zero eigenvalue on the principal branch
    with pytest.raises(ValueError):
        matrix_lambert_w([-1, -1], M)
    with pytest.raises(ValueError):
        matrix_lambert_w([0, -1, 0], M)  # wrong assignment length


def test_hybrid_branches():
    M = np.array([[0.0, 0.0], [1.0, -0.2]])
    assert hybrid_branches(-1, M) == [0, -1]
    assert hybrid_branches(0, M) == [0, 0]
