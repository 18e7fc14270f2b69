"""Grid-based quasipolynomial root finding and argument-principle root counting.

Roots of h(s) = det(sI - A - B exp(-s tau)) inside a rectangle are located by
marking grid cells where the zero-level sets of Re h and Im h both cross, then
polishing each candidate with Newton's method on a numeric derivative.  An
independent winding-number count along the rectangle boundary cross-checks
that no root was missed.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import ContourError, RefinementError, ResolutionError
from .model import Region, SpectrumReport, TdsSystem, char_fn, char_fn_grid, residual, sort_roots

__all__ = ["GridSpec", "find_roots", "count_roots", "refine_root"]

DEFAULT_STEP = 0.05
_NEWTON_MAX_ITER = 100


@dataclass(frozen=True)
class GridSpec:
    region: Region
    step: float = DEFAULT_STEP

    def __post_init__(self):
        if not (np.isfinite(self.step) and self.step > 0):
            raise ValueError("grid step must be positive")
        if self.step > min(self.region.width, self.region.height) / 4.0:
            raise ValueError("grid step must not exceed a quarter of the region extent")


def _newton_step(sys: TdsSystem, s: complex):
    h = char_fn(sys, s)
    d = 1e-7 * (1.0 + abs(s))
    hp = (char_fn(sys, s + d) - char_fn(sys, s - d)) / (2.0 * d)
    if hp == 0 or not np.isfinite(abs(hp)):
        return None
    step = h / hp
    return step if np.isfinite(abs(step)) else None


def _newton(sys: TdsSystem, s0: complex, tol: float, max_iter: int = _NEWTON_MAX_ITER):
    """Newton iteration with a central-difference derivative.  Returns the
    converged point or None."""
    s = complex(s0)
    for _ in range(max_iter):
        if residual(sys, s) <= tol:
            break
        step = _newton_step(sys, s)
        if step is None or not np.isfinite(abs(s - step)):
            return None
        s = s - step
    else:
        if residual(sys, s) > tol:
            return None
    # polish down to machine precision
    for _ in range(4):
        step = _newton_step(sys, s)
        if step is None or abs(step) < 1e-16 * (1.0 + abs(s)):
            break
        s = s - step
    # snap roots carrying only numerical dust off the real axis
    if s.imag != 0 and abs(s.imag) < 1e-7 * (1.0 + abs(s)) and residual(sys, complex(s.real)) <= tol:
        s = complex(s.real)
    return s


def find_roots(sys: TdsSystem, grid: GridSpec, tol: float = 1e-8) -> SpectrumReport:
    """All characteristic roots inside grid.region, dominance-ordered."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    reg, step = grid.region, grid.step
    xs = np.arange(reg.re_min, reg.re_max + step / 2.0, step)
    ys = np.arange(reg.im_min, reg.im_max + step / 2.0, step)
    S = xs[None, :] + 1j * ys[:, None]
    H = char_fn_grid(sys, S)
    R, I = H.real, H.imag

    def edge_changes(F):
        # sign change along x-edges and y-edges (a zero endpoint counts)
        ex = F[:, :-1] * F[:, 1:] <= 0
        ey = F[:-1, :] * F[1:, :] <= 0
        # any of a cell's four edges
        return ex[:-1, :] | ex[1:, :] | ey[:, :-1] | ey[:, 1:]

    marked = edge_changes(R) & edge_changes(I)
    ii, jj = np.nonzero(marked)
    centers = (xs[jj] + step / 2.0) + 1j * (ys[ii] + step / 2.0)

    found = []
    for c in centers:
        s = _newton(sys, complex(c), tol)
        if s is None or not reg.contains(s):
            continue
        found.append(s)

    # deduplicate, keeping the smallest residual
    kept = []
    for s in sorted(found, key=lambda z: residual(sys, z)):
        if all(abs(s - t) >= step / 2.0 for t in kept):
            kept.append(s)

    roots = sort_roots(kept)
    return SpectrumReport(
        roots=roots,
        residuals=[residual(sys, s) for s in roots],
        region=reg,
        method="oracle",
    )


def _phase_sum(sys: TdsSystem, a: complex, b: complex, ha: complex, hb: complex,
               depth: int) -> float:
    """Total phase increment of h along segment [a, b], bisecting adaptively
    whenever a single increment exceeds pi/2."""
    if ha == 0 or hb == 0:
        raise ContourError(f"characteristic function vanishes on the contour near {a}")
    d = np.angle(hb / ha)
    if abs(d) <= np.pi / 2.0:
        return float(d)
    if depth <= 0:
        raise ResolutionError("phase tracking did not resolve; increase samples_per_edge")
    m = (a + b) / 2.0
    hm = char_fn(sys, m)
    return (_phase_sum(sys, a, m, ha, hm, depth - 1)
            + _phase_sum(sys, m, b, hm, hb, depth - 1))


def _winding(sys: TdsSystem, region: Region, samples_per_edge: int) -> float:
    corners = [
        complex(region.re_min, region.im_min),
        complex(region.re_max, region.im_min),
        complex(region.re_max, region.im_max),
        complex(region.re_min, region.im_max),
    ]
    pts = []
    for i in range(4):
        a, b = corners[i], corners[(i + 1) % 4]
        t = np.linspace(0.0, 1.0, samples_per_edge + 1)[:-1]
        pts.extend(a + (b - a) * t)
    pts.append(pts[0])
    vals = [char_fn(sys, p) for p in pts]
    total = 0.0
    for i in range(len(pts) - 1):
        total += _phase_sum(sys, pts[i], pts[i + 1], vals[i], vals[i + 1], depth=48)
    return total / (2.0 * np.pi)


def count_roots(sys: TdsSystem, region: Region, samples_per_edge: int = 64,
                step: float = DEFAULT_STEP) -> int:
    """Number of characteristic roots inside the rectangle, by the argument
    principle.  If a root sits on the boundary the region is inflated by half
    a grid step and the count retried once."""
    if samples_per_edge < 4:
        raise ValueError("samples_per_edge must be at least 4")
    for attempt in range(2):
        # reject contours passing too close to a root
        t = np.linspace(0.0, 1.0, 4 * samples_per_edge)
        edge_min = np.inf
        corners = [
            complex(region.re_min, region.im_min),
            complex(region.re_max, region.im_min),
            complex(region.re_max, region.im_max),
            complex(region.re_min, region.im_max),
        ]
        for i in range(4):
            a, b = corners[i], corners[(i + 1) % 4]
            vals = char_fn_grid(sys, a + (b - a) * t)
            edge_min = min(edge_min, float(np.abs(vals).min()))
        if edge_min > 1e-6:
            break
        if attempt == 1:
            raise ContourError(
                f"characteristic root on or near the contour (min |h| = {edge_min:.3g})")
        pad = step / 2.0
        region = Region(region.re_min - pad, region.re_max + pad,
                        region.im_min - pad, region.im_max + pad)
    try:
        w = _winding(sys, region, samples_per_edge)
    except (ContourError, ResolutionError):
        # a root between contour samples (e.g. exactly on the real-axis edge)
        # defeats phase tracking; inflate once and retry
        pad = step / 2.0
        region = Region(region.re_min - pad, region.re_max + pad,
                        region.im_min - pad, region.im_max + pad)
        w = _winding(sys, region, samples_per_edge)
    n = int(round(w))
    if abs(w - n) > 0.1:
        raise ResolutionError(f"winding number {w} is not close to an integer")
    if n < 0:
        raise ResolutionError(f"negative winding number {n} for a holomorphic function")
    return n


def refine_root(sys: TdsSystem, s0: complex, tol: float = 1e-10) -> complex:
    """Polish an approximate root with Newton until the scaled residual is
    below tol; raises RefinementError on non-convergence."""
    s = _newton(sys, s0, tol)
    if s is None:
        # rerun to expose the last iterate for the error report
        last = complex(s0)
        for _ in range(_NEWTON_MAX_ITER):
            h = char_fn(sys, last)
            d = 1e-7 * (1.0 + abs(last))
            hp = (char_fn(sys, last + d) - char_fn(sys, last - d)) / (2.0 * d)
            if hp == 0:
                break
            last = last - h / hp
        raise RefinementError(
            f"Newton did not reach residual {tol} from {s0}",
            last_iterate=last, residual=residual(sys, last))
    return s
