"""Scalar Lambert W on arbitrary integer branches, plus branch-range classification.

W_k(z) is the k-th branch of the inverse of w -> w * exp(w).  Evaluation uses
Halley's iteration from branch-aware seeds: the asymptotic expansion
w ~ L1 - L2 + L2/L1 with L1 = log(z) + 2*pi*i*k far from the branch point, and
the square-root series in p = sqrt(2*(e*z + 1)) near z = -1/e.  Branch cuts
follow the counterclockwise-continuity convention (signed zeros on the negative
real axis select the side of the cut), matching Corless et al. and mpmath.
"""
from __future__ import annotations

import cmath
import math

__all__ = ["lambert_w", "branch_of", "branch_range_contains", "is_branch_boundary", "OMEGA"]

# Omega constant, W_0(1)
OMEGA = 0.5671432904097838

_BRANCH_POINT = -math.exp(-1.0)  # -1/e, where branches 0 and +-1 meet
_TWO_PI = 2.0 * math.pi
_MAX_ITER = 50


def _upper_side(z: complex) -> bool:
    """True when z lies on or above the real axis (signed zero aware)."""
    if z.imag != 0.0:
        return z.imag > 0.0
    return math.copysign(1.0, z.imag) > 0.0


def _branch_point_series(p: complex) -> complex:
    # square-root series about the branch point, w = -1 + p - p^2/3 + ...
    return (-1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p ** 3
            - 43.0 / 540.0 * p ** 4 + 769.0 / 17280.0 * p ** 5)


# [5/5] Pade approximant of W_0 about z = 0, good to ~0.2 absolute on the
# near-origin seeding box (Halley does the rest)
_PADE_NUM = (0.0, 1.0, 5.391781727853917, 9.497910459932605,
             6.015143760628175, 0.9742729626103624)
_PADE_DEN = (1.0, 6.391781727853917, 14.389692187786523,
             13.483830023300489, 4.709982645174846, 0.36622027841568825)


def _pade0(z: complex) -> complex:
    num = 0j
    for c in reversed(_PADE_NUM):
        num = num * z + c
    den = 0j
    for c in reversed(_PADE_DEN):
        den = den * z + c
    return num / den


def _seed(k: int, z: complex) -> complex:
    near_bp = abs(z - _BRANCH_POINT) < 0.3
    if near_bp and k in (0, -1, 1):
        # keep the sign of a zero imaginary part through the arithmetic so the
        # square root lands on the correct side of the cut
        p = cmath.sqrt(complex(2.0 * math.e * z.real + 2.0, 2.0 * math.e * z.imag))
        if k == 0:
            return _branch_point_series(p)
        if k == -1 and _upper_side(z):
            return _branch_point_series(-p)
        if k == 1 and not _upper_side(z):
            return _branch_point_series(-p)
        # other side of the cut: the branch value is not close to -1 there
    if k == 0:
        if (-1.0 < z.real < 1.5 and abs(z.imag) < 1.0
                and -2.5 * abs(z.imag) - 0.2 < z.real):
            return _pade0(z)
        L1 = cmath.log(z)
    else:
        L1 = cmath.log(z) + _TWO_PI * 1j * k
    L2 = cmath.log(L1)
    return L1 - L2 + L2 / L1


def lambert_w(k: int, z: complex) -> complex:
    """Branch-k Lambert W of z, satisfying w * exp(w) = z.

    Raises ValueError for z = 0 on a non-principal branch (the limit is -inf)
    and for non-finite z; ArithmeticError if the iteration fails to converge
    (not observed in testing).
    """
    k = int(k)
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError("lambert_w requires a finite argument")
    if z == 0:
        if k == 0:
            return 0j
        raise ValueError("W_k(0) diverges to -inf for k != 0")

    w = _seed(k, z)
    for _ in range(_MAX_ITER):
        ew = cmath.exp(w)
        f = w * ew - z
        wp1 = w + 1.0
        if wp1 == 0:
            wp1 = 1e-300
        # Halley step
        step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w -= step
        if abs(step) < 1e-15 * (1.0 + abs(w)):
            break
    # near the branch point the step size stagnates around sqrt(eps) while the
    # value is already at full attainable accuracy, so exhausting the loop is
    # not an error by itself; the defect check below decides
    check = abs(w * cmath.exp(w) - z)
    if check > 1e-10 * max(abs(z), 1e-290):
        raise ArithmeticError(f"lambert_w(k={k}) inaccurate for z={z}: defect {check}")
    return w


def _round_trip_matches(k: int, w: complex) -> bool:
    z = w * cmath.exp(w)
    if z == 0:
        return k == 0
    try:
        wk = lambert_w(k, z)
    except (ValueError, ArithmeticError):
        return False
    return abs(wk - w) <= 1e-8 * (1.0 + abs(w))


def branch_of(w: complex) -> int:
    """The branch index k whose range contains w, via the round trip
    W_k(w * exp(w)) = w.  Candidates are k0 = round(Im(w)/2*pi) and k0 +- 1."""
    w = complex(w)
    if not (math.isfinite(w.real) and math.isfinite(w.imag)):
        raise ValueError("branch_of requires a finite argument")
    k0 = round(w.imag / _TWO_PI)
    for k in (k0, k0 - 1, k0 + 1):
        if _round_trip_matches(k, w):
            return k
    raise ArithmeticError(f"no branch round-trips for w={w}")


def is_branch_boundary(w: complex) -> bool:
    """True when w sits on (or at) a branch-range boundary, where the
    closed-boundary convention of branch_of is a tie-break rather than a
    unique classification.  Covers the real segment [-1, 0), which the closure
    convention shares between k = 0 and k = -1, and any w for which more than
    one candidate branch round-trips."""
    w = complex(w)
    if w.imag == 0.0 and -1.0 <= w.real < 0.0:
        return True
    k0 = round(w.imag / _TWO_PI)
    hits = [k for k in (k0, k0 - 1, k0 + 1) if _round_trip_matches(k, w)]
    return len(hits) != 1


def branch_range_contains(k: int, w: complex) -> bool:
    """True iff branch_of(w) == k under the closed-boundary convention."""
    return branch_of(w) == int(k)
