"""Characteristic spectra of linear time-delay systems.

Two routes to the spectrum of x'(t) = A x(t) + B x(t - tau): a grid-based
quasipolynomial root finder with argument-principle counting, and the matrix
Lambert W branch method with per-eigenvalue branch assignment.
"""

from .branch_method import (
    LambertSolution,
    PairClassification,
    branch_scan,
    classify_pair,
    dominant_root,
    first_order_rightmost,
    m_to_q,
    roots_to_companion,
    s_to_w,
    solve_branch,
    verify_solution,
    w_to_m,
)
from .exceptions import (
    ContourError,
    DefectiveMatrixError,
    InconsistencyError,
    PairingError,
    RefinementError,
    ResolutionError,
    SolverError,
)
from .lambertw import OMEGA, branch_of, branch_range_contains, is_branch_boundary, lambert_w
from .matrixfn import EigenDecomposition, eig, expm, hybrid_branches, matrix_lambert_w, w_times_exp_w
from .model import (
    Region,
    SpectrumReport,
    TdsSystem,
    char_fn,
    char_matrix,
    load_system,
    residual,
    sort_roots,
    stability_verdict,
)
from .qpmr import GridSpec, count_roots, find_roots, refine_root

__version__ = "0.1.0"

__all__ = [
    "TdsSystem", "Region", "SpectrumReport", "char_matrix", "char_fn",
    "residual", "stability_verdict", "sort_roots", "load_system",
    "lambert_w", "branch_of", "branch_range_contains", "is_branch_boundary", "OMEGA",
    "EigenDecomposition", "expm", "eig", "matrix_lambert_w", "w_times_exp_w",
    "hybrid_branches",
    "GridSpec", "find_roots", "count_roots", "refine_root",
    "LambertSolution", "PairClassification", "roots_to_companion", "s_to_w",
    "w_to_m", "m_to_q", "solve_branch", "verify_solution", "classify_pair",
    "branch_scan", "first_order_rightmost", "dominant_root",
    "DefectiveMatrixError", "ContourError", "ResolutionError", "RefinementError",
    "SolverError", "InconsistencyError", "PairingError",
]
