"""From a root pair back to the matrix Lambert W data that produces it.

Any pair of characteristic roots of a second-order system determines a real
companion matrix S whose eigenvalues are the pair.  Running the chain

    S  ->  W = tau (S - A)  ->  M = W e^W  ->  Q with tau B Q = M

recovers a starting point for the branch solver and tells us which Lambert W
branch the nonzero eigenvalue of W lives on.  For this system both known
pairs classify to branch k = -1, including the pair with the rightmost root
of the searched window -- the principal branch never appears.
"""
import numpy as np

from tdspectrum import (
    GridSpec,
    Region,
    TdsSystem,
    branch_scan,
    classify_pair,
    find_roots,
    m_to_q,
    w_to_m,
)

sys_ = TdsSystem([[0.0, 1.0], [-5.0, 10.0]], [[0.0, 0.0], [-3.0, -3.0]], 1.0)
report = find_roots(sys_, GridSpec(Region(-4.0, 2.0, -1.0, 8.0), 0.05))
print("root pairs, scanned in dominance order:\n")

for cls in branch_scan(sys_, report):
    lam, partner = cls.pair
    print(f"pair ({lam:.4f}, {partner:.4f})"
          + ("   <- contains the rightmost root" if cls.includes_dominant else ""))
    print(f"  S   = {np.round(cls.S, 4).tolist()}")
    print(f"  W   = {np.round(np.real(cls.W), 4).tolist()}")
    print(f"  w22 = {cls.w22:.4f}  -> branch k = {cls.branch}")
    # w22 is exact algebra: tau (sum of the pair - a22)
    total = (lam + partner).real
    print(f"  tau(2 Re(lambda) - a22) = {sys_.tau * (total - sys_.A[1, 1]):.4f}\n")

# the forward map W e^W gives the M the solver must reproduce; note the tiny
# scale (e^-11.38 = 1.1e-5).  Some published numbers for this matrix are
# 10^3 larger -- an easy misprint to make and worth flagging explicitly.
first = classify_pair(sys_, report.roots[0], report.roots[2],
                      rightmost=report.roots[0])
M = np.real(w_to_m(first.W))
print(f"M = W e^W = {M.tolist()}")
print(f"minimum-norm Q with tau B Q = M:\n{np.real(m_to_q(sys_, M))}")
