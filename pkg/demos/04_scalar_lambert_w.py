"""Scalar Lambert W branches and the first-order dominance baseline.

For first-order delay systems x'(t) = a x(t) + b x(t - tau) the rightmost
characteristic root always comes from the principal branch:

    s = W_0(tau b e^{-a tau}) / tau + a.

That property is what makes the second-order counterexample in the other
demos interesting: there the pair containing the rightmost root classifies
to branch k = -1 instead.
"""
import numpy as np

from tdspectrum import (
    GridSpec,
    Region,
    TdsSystem,
    branch_of,
    find_roots,
    first_order_rightmost,
    is_branch_boundary,
    lambert_w,
)

# the branches tile the w-plane; branch_of inverts the tiling by round trip
print("branch ranges, probed by w -> branch_of(w):")
for w in (0.5, -0.5, -2.5, 2.0 + 7.0j, 2.0 - 7.0j, 1.0 + 8.0j, -11.3784):
    note = "  (range boundary)" if is_branch_boundary(w) else ""
    print(f"  branch_of({w!s:>12}) = {branch_of(w):+d}{note}")

# defining equation w e^w = z holds on every branch
rng = np.random.default_rng(0)
worst = 0.0
for _ in range(2000):
    k = int(rng.integers(-5, 6))
    z = complex(10.0 ** rng.uniform(-3, 3) * np.exp(1j * rng.uniform(-np.pi, np.pi)))
    w = lambert_w(k, z)
    worst = max(worst, abs(w * np.exp(w) - z) / abs(z))
print(f"\nworst relative defect of w e^w = z over 2000 samples: {worst:.2e}")

# first-order systems: closed form vs. the grid oracle
print("\nfirst-order rightmost roots, formula vs. grid search:")
for a, b, tau in ((-1.0, -0.5, 1.0), (0.3, -1.2, 0.7), (-0.2, 0.8, 1.5)):
    pred = first_order_rightmost(a, b, tau)
    reg = Region(pred.real - 0.5, pred.real + 0.5,
                 max(0.0, pred.imag - 0.5), pred.imag + 0.5)
    rep = find_roots(TdsSystem([[a]], [[b]], tau), GridSpec(reg, 0.05))
    got = min(rep.roots, key=lambda s: abs(s - pred))
    print(f"  a={a:+.1f} b={b:+.1f} tau={tau:.1f}:  "
          f"W_0 formula {pred:.8f}   oracle {got:.8f}")
