"""Solve the matrix Lambert W branch equation and read off roots.

The branch solver looks for Q such that

    W_k(tau B Q) e^{W_k(tau B Q) + A tau} = tau B,

where the branch index is applied per eigenvalue of tau B Q (eigenvalues at
numerical zero are pinned to the principal branch -- the only branch defined
there).  The eigenvalues of S = W/tau + A are then characteristic roots of
the delay system.

With the hybrid (0, -1) assignment the solver recovers the pair containing
the rightmost root of the reference window -- found on branch k = -1, not on
the principal branch.
"""
import numpy as np

from tdspectrum import TdsSystem, solve_branch, verify_solution

sys_ = TdsSystem([[0.0, 1.0], [-5.0, 10.0]], [[0.0, 0.0], [-3.0, -3.0]], 1.0)

# this seed makes tau B Q0 exactly nilpotent, so every branch assignment
# degenerates at the seed itself; the solver probes small diagonal offsets
# and settles on the most dominant admissible solution
Q0 = [[2.0, 1.0], [-2.0, -1.0]]
sol = solve_branch(sys_, [0, -1], Q0)
print("branch assignment (0, -1), seed Q0 =", Q0)
print(f"  applied branches: {sol.branches}")
print(f"  eigenvalues of S: {[f'{v:.6f}' for v in sol.eigenvalues]}")
print(f"  solver residual:  {sol.solver_residual:.2e}")
matrix_residual, char_residuals = verify_solution(sys_, sol.S)
print(f"  ||S - A - B e^(-S tau)|| = {matrix_residual:.2e}")
print(f"  |h| at the eigenvalues:  {[f'{r:.1e}' for r in char_residuals]}")

# a seed near another k = -1 solution converges to that one instead: the
# solver is local once the seed is non-degenerate
Q1 = np.array([[1.5603e-5, 4.9632e-6], [1.5603e-5, 4.9632e-6]])
sol2 = solve_branch(sys_, [0, -1], Q1)
print("\nsame assignment, seed near the complex pair:")
print(f"  eigenvalues of S: {[f'{v:.6f}' for v in sol2.eigenvalues]}")

# scalar sanity check: for first-order systems the branch equation reduces to
# the scalar Lambert W formula exactly
scalar = TdsSystem([[-1.0]], [[-0.5]], 1.0)
for k in (0, -1, 1):
    s = solve_branch(scalar, [k], [[1.0]]).eigenvalues[0]
    print(f"\nscalar system, branch {k:+d}: root {s:.6f}")
