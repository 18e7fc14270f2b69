"""Time-delay system model: characteristic matrix, characteristic function, spectra.

The system is the retarded delay-differential equation

    x'(t) = A x(t) + B x(t - tau),

with real n-by-n matrices A, B and a single discrete delay tau > 0.  Its
characteristic roots are the zeros of h(s) = det(s I - A - B exp(-s tau)).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "TdsSystem",
    "Region",
    "SpectrumReport",
    "char_matrix",
    "char_fn",
    "char_fn_grid",
    "residual",
    "stability_verdict",
    "sort_roots",
    "load_system",
]


@dataclass(frozen=True)
class TdsSystem:
    """State matrix A, delayed-state matrix B and delay tau of an LTI-TDS."""

    A: np.ndarray
    B: np.ndarray
    tau: float

    def __post_init__(self):
        A = np.atleast_2d(np.asarray(self.A, dtype=float))
        B = np.atleast_2d(np.asarray(self.B, dtype=float))
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValueError("A must be a square matrix")
        if B.shape != A.shape:
            raise ValueError("B must be square with the same dimension as A")
        if not (np.all(np.isfinite(A)) and np.all(np.isfinite(B))):
            raise ValueError("A and B must have finite entries")
        tau = float(self.tau)
        if not np.isfinite(tau) or tau <= 0:
            raise ValueError("tau must be a finite positive number")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "tau", tau)

    @property
    def n(self) -> int:
        return self.A.shape[0]


@dataclass(frozen=True)
class Region:
    """Rectangular search window in the complex plane."""

    re_min: float
    re_max: float
    im_min: float
    im_max: float

    def __post_init__(self):
        if not all(np.isfinite([self.re_min, self.re_max, self.im_min, self.im_max])):
            raise ValueError("region bounds must be finite")
        if not self.re_min < self.re_max:
            raise ValueError("re_min must be smaller than re_max")
        if not self.im_min <= self.im_max:
            raise ValueError("im_min must not exceed im_max")

    def contains(self, s: complex) -> bool:
        return (self.re_min <= s.real <= self.re_max
                and self.im_min <= s.imag <= self.im_max)

    @property
    def width(self) -> float:
        return self.re_max - self.re_min

    @property
    def height(self) -> float:
        return self.im_max - self.im_min


@dataclass
class SpectrumReport:
    """Roots found in a region, dominance-ordered, with scaled residuals."""

    roots: list = field(default_factory=list)
    residuals: list = field(default_factory=list)
    region: Region | None = None
    method: str = "oracle"

    def __len__(self):
        return len(self.roots)

    def rightmost(self) -> complex:
        if not self.roots:
            raise ValueError("empty report has no rightmost root")
        return self.roots[0]


def sort_roots(roots):
    """Dominance order: decreasing real part, ties by increasing |imag|."""
    return sorted(roots, key=lambda s: (-s.real, abs(s.imag)))


def char_matrix(sys: TdsSystem, s: complex) -> np.ndarray:
    """Characteristic matrix s I - A - B exp(-s tau)."""
    s = complex(s)
    return s * np.eye(sys.n) - sys.A - sys.B * np.exp(-s * sys.tau)


def char_fn(sys: TdsSystem, s: complex) -> complex:
    """Characteristic quasipolynomial h(s) = det(s I - A - B exp(-s tau))."""
    H = char_matrix(sys, s)
    if sys.n == 1:
        return complex(H[0, 0])
    if sys.n == 2:
        return complex(H[0, 0] * H[1, 1] - H[0, 1] * H[1, 0])
    return complex(np.linalg.det(H))


def char_fn_grid(sys: TdsSystem, S: np.ndarray) -> np.ndarray:
    """Vectorized h(s) over an array of complex points."""
    S = np.asarray(S, dtype=complex)
    E = np.exp(-S * sys.tau)
    A, B = sys.A, sys.B
    if sys.n == 1:
        return S - A[0, 0] - B[0, 0] * E
    if sys.n == 2:
        return ((S - A[0, 0] - B[0, 0] * E) * (S - A[1, 1] - B[1, 1] * E)
                - (A[0, 1] + B[0, 1] * E) * (A[1, 0] + B[1, 0] * E))
    out = np.empty(S.shape, dtype=complex)
    flat = S.ravel()
    res = out.ravel()
    for i, s in enumerate(flat):
        res[i] = char_fn(sys, s)
    return out


def residual(sys: TdsSystem, s: complex) -> float:
    """|h(s)| scaled by max(1, |s|^n), comparable across the plane."""
    s = complex(s)
    return abs(char_fn(sys, s)) / max(1.0, abs(s) ** sys.n)


def stability_verdict(report: SpectrumReport, rightmost_certified: bool = False) -> str:
    """'unstable' if any root is in the open right half plane, 'stable' if a
    certified report shows only left-half-plane roots, else 'inconclusive'."""
    if not report.roots:
        return "inconclusive"
    if any(s.real > 0 for s in report.roots):
        return "unstable"
    if rightmost_certified and all(s.real < 0 for s in report.roots):
        return "stable"
    return "inconclusive"


def load_system(path) -> TdsSystem:
    """Load a system definition from a JSON file with keys "A", "B", "tau"."""
    with open(path) as fh:
        raw = json.load(fh)
    if not isinstance(raw, dict):
        raise ValueError("system file must contain a JSON object")
    for key in ("A", "B", "tau"):
        if key not in raw:
            raise ValueError(f"system file is missing key \"{key}\"")
    try:
        A = np.array(raw["A"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"key \"A\" is not a numeric matrix: {exc}") from exc
    try:
        B = np.array(raw["B"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"key \"B\" is not a numeric matrix: {exc}") from exc
    if not isinstance(raw["tau"], (int, float)):
        raise ValueError("key \"tau\" must be a positive number")
    try:
        return TdsSystem(A, B, float(raw["tau"]))
    except ValueError as exc:
        # re-tag shape/positivity problems with the key that caused them
        msg = str(exc)
        if "tau" in msg:
            raise ValueError(f"key \"tau\": {msg}") from exc
        if msg.startswith("B"):
            raise ValueError(f"key \"B\": {msg}") from exc
        raise ValueError(f"key \"A\"/\"B\": {msg}") from exc
