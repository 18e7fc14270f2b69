"""Matrix Lambert W spectrum method for time-delay systems.

Implements the reverse-engineering pipeline that starts from a pair of
characteristic roots and recovers the chain

    pair -> companion S -> W = tau (S - A) -> M = W expm(W) -> Q with tau B Q = M,

classifies which Lambert W branch the nonzero eigenvalue of W falls into, and
runs the forward branch solver: find Q such that

    W_k(tau B Q) expm(W_k(tau B Q) + A tau) = tau B,

whose S = W/tau + A has characteristic roots among its eigenvalues.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np
import scipy.optimize

from .exceptions import DefectiveMatrixError, InconsistencyError, PairingError, SolverError
from .lambertw import branch_of, lambert_w
from .matrixfn import ZERO_EIGENVALUE_TOL, eig, expm, matrix_lambert_w, w_times_exp_w
from .model import SpectrumReport, TdsSystem, residual

__all__ = [
    "LambertSolution",
    "PairClassification",
    "roots_to_companion",
    "s_to_w",
    "w_to_m",
    "m_to_q",
    "solve_branch",
    "verify_solution",
    "classify_pair",
    "branch_scan",
    "first_order_rightmost",
    "dominant_root",
]


@dataclass
class LambertSolution:
    branches: list
    Q: np.ndarray
    M: np.ndarray
    W: np.ndarray
    S: np.ndarray
    eigenvalues: list
    solver_residual: float
    char_residuals: list = field(default_factory=list)
    iterations: int = 0


@dataclass
class PairClassification:
    pair: tuple
    S: np.ndarray
    W: np.ndarray
    w22: float
    branch: int
    includes_dominant: bool


def roots_to_companion(lam1: complex, lam2: complex) -> np.ndarray:
    """Real companion matrix [[0, 1], [-lam1*lam2, lam1+lam2]] of a root pair.

    Complex pairs must be conjugate so the matrix is real.
    """
    lam1, lam2 = complex(lam1), complex(lam2)
    scale = 1.0 + max(abs(lam1), abs(lam2))
    if (lam1.imag != 0 or lam2.imag != 0) and abs(lam2 - lam1.conjugate()) > 1e-9 * scale:
        raise ValueError("complex root pair must be conjugate")
    prod = lam1 * lam2
    tot = lam1 + lam2
    return np.array([[0.0, 1.0], [-prod.real, tot.real]])


def s_to_w(sys: TdsSystem, S) -> np.ndarray:
    """W = tau (S - A)."""
    S = np.asarray(S, dtype=complex)
    if S.shape != sys.A.shape:
        raise ValueError("S must have the same dimension as A")
    W = sys.tau * (S - sys.A)
    return W.real if np.all(W.imag == 0) else W


def w_to_m(W) -> np.ndarray:
    """M with W as its matrix Lambert W value, i.e. M = W expm(W)."""
    return w_times_exp_w(W)


def m_to_q(sys: TdsSystem, M) -> np.ndarray:
    """Minimum-norm Q with tau B Q = M (pseudoinverse through SVD).

    Raises InconsistencyError when M is not in the column space of B.
    """
    M = np.asarray(M, dtype=complex)
    tb = sys.tau * sys.B
    Q = np.linalg.pinv(tb, rcond=1e-12) @ M
    defect = np.linalg.norm(tb @ Q - M)
    if defect > 1e-6 * (1.0 + np.linalg.norm(M)):
        raise InconsistencyError(
            f"M is incompatible with the column space of B (defect {defect:.3g})")
    return Q


def _branch_list(assign, n):
    branches = [int(k) for k in assign]
    if len(branches) != n:
        raise ValueError("branch assignment length must equal the system order")
    return branches


def _pinned(branches, values):
    # eigenvalues at numerical zero are only reachable through branch 0
    return [0 if abs(lam) < ZERO_EIGENVALUE_TOL else k
            for k, lam in zip(branches, values)]


def _principal_w_series(M):
    # W_0 as a matrix Taylor series, sum_j (-j)^(j-1)/j! M^j; used for
    # near-nilpotent M where diagonalization breaks down (all eigenvalues ~ 0)
    W = np.zeros_like(M)
    P = np.eye(M.shape[0], dtype=complex)
    for j in range(1, 24):
        P = P @ M
        W = W + (-float(j)) ** (j - 1) / math.factorial(j) * P
    return W


def _matrix_w(branches, M):
    """matrix_lambert_w with zero-eigenvalue pinning and a series fallback for
    the defective all-zero-eigenvalue case.  Returns (W, applied_branches)."""
    try:
        dec = eig(M)
    except DefectiveMatrixError:
        values = np.linalg.eigvals(M)
        if np.abs(values).max() < ZERO_EIGENVALUE_TOL and np.abs(M).max() < 0.2:
            return _principal_w_series(M), [0] * M.shape[0]
        raise
    applied = _pinned(branches, dec.values)
    return matrix_lambert_w(applied, M), applied


def _solution_from_q(sys: TdsSystem, branches, Q):
    M = sys.tau * sys.B @ Q
    W, applied = _matrix_w(branches, M)
    R = W @ expm(W + sys.A * sys.tau) - sys.tau * sys.B
    return M, W, R, applied


# residual value returned to the root finder when an iterate is invalid
# (defective M, non-finite arithmetic, or a forbidden branch migration)
_PENALTY = 1e6
# degenerate seeds (tau B Q0 nilpotent to working precision) sit on a residual
# ridge; the solver restarts from these diagonal offsets instead
_PROBE_SCALES = (1e-5, 3e-5, 1e-4, 3e-4)


def _residual_fn(sys: TdsSystem, branches, requested, real_mode: bool):
    """Residual of the branch equation as a flat real vector function.

    real_mode restricts the search to real Q (valid whenever the residual
    stays real along the way); candidates outside the requested branch
    configuration get a large constant penalty so the root finder backs off.
    """
    n = sys.n
    m = n * n

    def unpack(x):
        if real_mode:
            return x.reshape(n, n).astype(complex)
        return (x[:m] + 1j * x[m:]).reshape(n, n)

    def F(x):
        try:
            M, _, R, applied = _solution_from_q(sys, branches, unpack(x))
        except (DefectiveMatrixError, ArithmeticError, ValueError):
            return np.full(x.size, _PENALTY)
        # a non-principal branch must not silently migrate onto the principal
        # sheet (pinning at an exactly-degenerate M, e.g. a zero seed, is fine)
        values = np.linalg.eigvals(M)
        if (Counter(k for k in applied if k != 0) != requested
                and np.abs(values).max() >= ZERO_EIGENVALUE_TOL):
            return np.full(x.size, _PENALTY)
        if real_mode:
            if np.abs(R.imag).max() > 1e-12 * (1.0 + np.abs(R.real).max()):
                return np.full(x.size, _PENALTY)
            r = R.real.ravel()
        else:
            r = np.concatenate([R.real.ravel(), R.imag.ravel()])
        return r if np.all(np.isfinite(r)) else np.full(x.size, _PENALTY)

    return F, unpack


def _run_solver(sys: TdsSystem, branches, requested, Q0, tol, maxfev, real_mode):
    """One Powell-hybrid run.  Returns (Q, M, W, applied, norm, nfev) on a
    converged, branch-consistent solution; otherwise the achieved norm."""
    F, unpack = _residual_fn(sys, branches, requested, real_mode)
    if real_mode:
        x0 = Q0.real.ravel().copy()
    else:
        x0 = np.concatenate([Q0.real.ravel(), Q0.imag.ravel()])
    if not np.all(np.isfinite(F(x0))) or F(x0)[0] == _PENALTY:
        return None, np.inf
    sol = scipy.optimize.root(F, x0, method="hybr",
                              options={"xtol": 1e-13, "maxfev": maxfev})
    norm = float(np.linalg.norm(F(sol.x)))
    if norm > tol:
        return None, norm
    Q = unpack(sol.x)
    M, W, _, applied = _solution_from_q(sys, branches, Q)
    # the converged solution has to realise the requested configuration, not
    # merely have passed through it
    if Counter(k for k in applied if k != 0) != requested:
        return None, norm
    return (Q, M, W, applied, norm, int(sol.nfev)), norm


def _eigenvalues_of(S):
    try:
        return list(eig(S).values)
    except DefectiveMatrixError:
        vals = np.linalg.eigvals(S)
        return sorted(vals, key=lambda v: (-v.real, v.imag))


def solve_branch(sys: TdsSystem, assign, Q0, tol: float = 1e-9,
                 max_iter: int = 200) -> LambertSolution:
    """Solve W_k(tau B Q) expm(W_k(tau B Q) + A tau) = tau B for Q.

    Powell hybrid iteration over the entries of Q (real entries only when the
    problem data are real, falling back to the full complex unknowns).
    Eigenvalues of tau B Q at numerical zero are pinned to the principal
    branch, the only branch defined there.  A seed whose tau B Q0 has all
    eigenvalues at numerical zero while non-principal branches are requested
    is degenerate -- every branch assignment collapses there -- so the solver
    restarts from small signed diagonal offsets of Q0 and, among the
    solutions found, returns the one with the most dominant spectrum.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if np.all(sys.B == 0):
        raise ValueError("branch method needs a nonzero delayed-state matrix B")
    n = sys.n
    branches = _branch_list(assign, n)
    Q0 = np.asarray(Q0, dtype=complex).reshape(n, n)
    if not np.all(np.isfinite(Q0)):
        raise ValueError("Q0 must be finite")
    requested = Counter(k for k in branches if k != 0)
    maxfev = max_iter * (2 * n * n + 1)

    seed_eigs = np.abs(np.linalg.eigvals(sys.tau * sys.B @ Q0))
    degenerate = bool(requested) and seed_eigs.max() < ZERO_EIGENVALUE_TOL
    seeds = [Q0]
    if degenerate:
        for eps in _PROBE_SCALES:
            for signs in itertools.product((-1.0, 1.0), repeat=n):
                seeds.append(Q0 + eps * np.diag(signs))

    real_data = (np.all(sys.A.imag == 0) if np.iscomplexobj(sys.A) else True) \
        and (np.all(sys.B.imag == 0) if np.iscomplexobj(sys.B) else True) \
        and np.all(Q0.imag == 0)
    modes = [True, False] if real_data else [False]

    found = []
    best_norm = np.inf
    for real_mode in modes:
        for seed in seeds:
            hit, norm = _run_solver(sys, branches, requested, seed, tol,
                                    maxfev, real_mode)
            best_norm = min(best_norm, norm)
            if hit is None:
                continue
            found.append(hit)
            if not degenerate:
                break
        if found:
            break
    if not found:
        raise SolverError(
            f"branch solver did not reach {tol} from the given seed "
            f"(best residual {best_norm:.3g})", residual=best_norm)

    # among distinct admissible solutions keep the most dominant spectrum
    scored = []
    for Q, M, W, applied, norm, nfev in found:
        S = W / sys.tau + sys.A
        values = _eigenvalues_of(S)
        key = tuple((-v.real, abs(v.imag)) for v in values)
        scored.append((key, norm, Q, M, W, S, applied, values, nfev))
    scored.sort(key=lambda t: (t[0], t[1]))
    _, norm, Q, M, W, S, applied, values, nfev = scored[0]
    return LambertSolution(
        branches=applied,
        Q=Q, M=M, W=W, S=S,
        eigenvalues=values,
        solver_residual=norm,
        char_residuals=[residual(sys, lam) for lam in values],
        iterations=nfev,
    )


def verify_solution(sys: TdsSystem, S):
    """Residuals of a candidate solution matrix S: the Frobenius norm of
    S - A - B expm(-S tau), and the scaled |h| at each eigenvalue of S."""
    S = np.asarray(S, dtype=complex)
    if S.shape != sys.A.shape:
        raise ValueError("S must have the same dimension as A")
    matrix_residual = float(np.linalg.norm(S - sys.A - sys.B @ expm(-S * sys.tau)))
    char_residuals = [residual(sys, lam) for lam in eig(S).values]
    return matrix_residual, char_residuals


def dominant_root(sys: TdsSystem, region=None, step: float = 0.05) -> complex:
    """Rightmost characteristic root, located with the grid oracle.

    The default search window uses the bound |s| <= ||A|| + ||B|| for roots in
    the closed right half plane and extends a comparable distance to the left.
    """
    from .model import Region
    from .qpmr import GridSpec, find_roots

    if region is None:
        r = float(np.linalg.norm(sys.A, np.inf) + np.linalg.norm(sys.B, np.inf)) + 1.0
        region = Region(-r, r, 0.0, r)
        step = max(step, 2.0 * r / 400.0)
    report = find_roots(sys, GridSpec(region, step))
    if not report.roots:
        raise ValueError("no roots found in the dominance search window")
    return report.roots[0]


def classify_pair(sys: TdsSystem, lam: complex, partner: complex,
                  rightmost: complex | None = None) -> PairClassification:
    """Build S and W for a root pair and classify the branch of the nonzero
    eigenvalue of W.  For 2x2 systems w22 must equal tau (2 Re(lam) - a22)."""
    if sys.n != 2:
        raise ValueError("pair classification is defined for second-order systems")
    S = roots_to_companion(lam, partner)
    W = s_to_w(sys, S)
    w22 = float(np.real(W[1, 1]))
    formula = sys.tau * ((complex(lam) + complex(partner)).real - sys.A[1, 1])
    if abs(w22 - formula) > 1e-9 * (1.0 + abs(formula)):
        raise ArithmeticError(
            f"w22 from W ({w22}) disagrees with tau(2 Re(lam) - a22) ({formula})")
    if rightmost is None:
        rightmost = dominant_root(sys)
    tol = 1e-3 * (1.0 + abs(rightmost))
    includes = (abs(complex(lam) - rightmost) < tol
                or abs(complex(partner) - rightmost) < tol
                or abs(complex(lam).conjugate() - rightmost) < tol
                or abs(complex(partner).conjugate() - rightmost) < tol)
    return PairClassification(
        pair=(complex(lam), complex(partner)),
        S=S, W=W, w22=w22,
        branch=branch_of(w22),
        includes_dominant=bool(includes),
    )


def _group_pairs(roots):
    """Conjugate pairs matched by imaginary sign; leftover real roots paired
    in dominance order."""
    reals = [s for s in roots if s.imag == 0]
    complexes = [s for s in roots if s.imag != 0]
    pairs = []
    used = [False] * len(complexes)
    for i, s in enumerate(complexes):
        if used[i] or s.imag < 0:
            continue
        for j, t in enumerate(complexes):
            if not used[j] and j != i and abs(t - s.conjugate()) < 1e-9 * (1.0 + abs(s)):
                used[i] = used[j] = True
                pairs.append((s, t))
                break
        else:
            # conjugate outside the searched region: it is still a root
            used[i] = True
            pairs.append((s, s.conjugate()))
    for j, t in enumerate(complexes):
        if not used[j]:
            used[j] = True
            pairs.append((t, t.conjugate()))
    reals.sort(key=lambda s: -s.real)
    if len(reals) % 2 != 0:
        raise PairingError(
            "odd number of real roots cannot be paired automatically; "
            "classify explicit pairs with classify_pair instead")
    for i in range(0, len(reals), 2):
        pairs.append((reals[i], reals[i + 1]))
    pairs.sort(key=lambda p: -(p[0] + p[1]).real)
    return pairs


def branch_scan(sys: TdsSystem, report: SpectrumReport,
                rightmost: complex | None = None) -> list:
    """Classify every root pair of a report, ordered by decreasing pair real
    part.  The w22 sequence of the result can be checked for monotone decrease."""
    if sys.n != 2:
        raise ValueError("branch scan is defined for second-order systems")
    if np.all(sys.B == 0):
        raise PairingError(
            "system has no delayed dynamics (B = 0); the branch method does not apply")
    if not report.roots:
        raise PairingError("empty report: nothing to scan")
    if rightmost is None:
        rightmost = report.roots[0]
    return [classify_pair(sys, a, b, rightmost=rightmost)
            for a, b in _group_pairs(list(report.roots))]


def first_order_rightmost(a: float, b: float, tau: float) -> complex:
    """Rightmost characteristic root of x'(t) = a x(t) + b x(t - tau),
    from the principal branch: W_0(tau b exp(-a tau))/tau + a."""
    return lambert_w(0, tau * b * np.exp(-a * tau)) / tau + a
