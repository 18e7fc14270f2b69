"""Command-line front end.

Subcommands: `roots` (grid root finder with an argument-principle count
cross-check), `reverse` (root pair back to S, W, M, Q and a branch
classification), `solve` (matrix Lambert W branch solver), and `demo` (the
built-in second-order reference example, checked claim by claim).

Exit codes: 0 success, 1 configuration error, 2 count mismatch, 3 solver
failure, 4 failed claim check.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from .branch_method import (
    branch_scan,
    classify_pair,
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
    ResolutionError,
    SolverError,
)
from .lambertw import branch_of
from .matrixfn import eig
from .model import Region, TdsSystem, load_system, residual, stability_verdict
from .qpmr import GridSpec, count_roots, find_roots

__all__ = ["main"]

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_COUNT = 2
EXIT_SOLVER = 3
EXIT_CLAIM = 4

# second-order reference system used by the demo subcommand
_DEMO_A = [[0.0, 1.0], [-5.0, 10.0]]
_DEMO_B = [[0.0, 0.0], [-3.0, -3.0]]
_DEMO_TAU = 1.0
_DEMO_REGION = (-4.0, 2.0, -1.0, 8.0)
# expected values from the reference example (printed to four decimals there)
_DEMO_ROOTS = (0.8070 + 0.0j, -2.1854 + 0.0j, -1.4928 + 6.6027j)
_DEMO_W1 = [[0.0, 0.0], [6.7636, -11.3784]]
_DEMO_W2 = [[0.0, 0.0], [-40.8241, -12.9855]]
_DEMO_M1_PRINTED = [[0.0, 0.0], [0.0774, -0.1302]]  # 10^3 larger than W exp(W)
_DEMO_Q0 = [[2.0, 1.0], [-2.0, -1.0]]


def _cnum(z):
    z = complex(z)
    return [z.real, z.imag]


def _cmat(M):
    M = np.asarray(M, dtype=complex)
    if np.all(M.imag == 0):
        return [[float(v.real) for v in row] for row in M]
    return [[_cnum(v) for v in row] for row in M]


def _write_json(path, payload):
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _write_csv(path, sys_, roots):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["re", "im", "residual"])
        for s in roots:
            writer.writerow([f"{s.real:.12g}", f"{s.imag:.12g}",
                             f"{residual(sys_, s):.6g}"])


def _write_svg(path, region, roots):
    """Deterministic scatter plot of roots over the search rectangle."""
    w, h, pad = 640, 480, 50
    sx = (w - 2 * pad) / region.width
    sy = (h - 2 * pad) / max(region.height, 1e-12)

    def px(s):
        return pad + (s.real - region.re_min) * sx

    def py(s):
        return h - pad - (s.imag - region.im_min) * sy

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}">',
        f'<rect x="{pad}" y="{pad}" width="{w - 2 * pad}" height="{h - 2 * pad}" '
        'fill="none" stroke="black"/>',
        f'<text x="{w // 2}" y="{h - 12}" text-anchor="middle" '
        'font-family="serif" font-size="16">&#8476;</text>',
        f'<text x="14" y="{h // 2}" text-anchor="middle" '
        'font-family="serif" font-size="16">&#8465;</text>',
    ]
    if region.re_min < 0 < region.re_max:
        x0 = pad + (0.0 - region.re_min) * sx
        parts.append(f'<line x1="{x0:.2f}" y1="{pad}" x2="{x0:.2f}" '
                     f'y2="{h - pad}" stroke="gray" stroke-dasharray="4"/>')
    if region.im_min < 0 < region.im_max:
        y0 = h - pad - (0.0 - region.im_min) * sy
        parts.append(f'<line x1="{pad}" y1="{y0:.2f}" x2="{w - pad}" '
                     f'y2="{y0:.2f}" stroke="gray" stroke-dasharray="4"/>')
    for corner, anchor in ((complex(region.re_min, region.im_min), "start"),
                           (complex(region.re_max, region.im_min), "end")):
        parts.append(f'<text x="{px(corner):.2f}" y="{h - pad + 18}" '
                     f'text-anchor="{anchor}" font-family="serif" '
                     f'font-size="12">{corner.real:g}</text>')
    for s in roots:
        parts.append(f'<circle cx="{px(s):.2f}" cy="{py(s):.2f}" r="4" '
                     'fill="none" stroke="crimson" stroke-width="1.5"/>')
    parts.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(parts) + "\n")


def _load_q0(path, n):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ValueError(f"cannot read Q0 file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValueError(f"Q0 file is not valid JSON: {exc}") from exc
    if not isinstance(data, dict) or "Q" not in data:
        raise ValueError('Q0 file must be a JSON object with key "Q"')
    Q = np.asarray(data["Q"], dtype=complex)
    if Q.shape != (n, n):
        raise ValueError(f'key "Q" must be a {n}x{n} matrix, got shape {Q.shape}')
    return Q


def _region_from(args):
    try:
        return Region(*args.region)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"--region: {exc}") from exc


def cmd_roots(args) -> int:
    sys_ = load_system(args.system)
    region = _region_from(args)
    grid = GridSpec(region, args.step)
    report = find_roots(sys_, grid, tol=args.tol)
    expected = count_roots(sys_, region, step=args.step)
    print(f"found {len(report.roots)} roots; argument-principle count {expected}")
    for s, r in zip(report.roots, report.residuals):
        print(f"  {s.real:+.10f} {s.imag:+.10f}i  residual {r:.3g}")
    if args.csv:
        _write_csv(args.csv, sys_, report.roots)
    if args.svg:
        _write_svg(args.svg, region, report.roots)
    if args.json:
        _write_json(args.json, {
            "method": report.method,
            "region": [region.re_min, region.re_max, region.im_min, region.im_max],
            "roots": [_cnum(s) for s in report.roots],
            "residuals": report.residuals,
            "count": expected,
        })
    if expected != len(report.roots):
        print(f"error: count mismatch: grid search found {len(report.roots)}, "
              f"argument principle expects {expected}", file=sys.stderr)
        return EXIT_COUNT
    return EXIT_OK


def cmd_reverse(args) -> int:
    sys_ = load_system(args.system)
    lam = complex(args.pair[0], args.pair[1])
    partner = complex(args.pair[2], args.pair[3])
    cls = classify_pair(sys_, lam, partner)
    M = w_to_m(cls.W)
    Q = m_to_q(sys_, M)
    payload = {
        "pair": [_cnum(lam), _cnum(partner)],
        "S": _cmat(cls.S),
        "W": _cmat(cls.W),
        "M": _cmat(M),
        "Q": _cmat(Q),
        "W_eigenvalues": [_cnum(v) for v in eig(cls.W).values],
        "w22": cls.w22,
        "branch": cls.branch,
        "includes_dominant": cls.includes_dominant,
    }
    text = json.dumps(payload, indent=2, sort_keys=True)
    print(text)
    if args.json:
        _write_json(args.json, payload)
    return EXIT_OK


def cmd_solve(args) -> int:
    sys_ = load_system(args.system)
    n = sys_.n
    branches = args.branches if args.branches is not None else [0] * n
    if len(branches) != n:
        raise ValueError(f"--branches needs {n} integers, got {len(branches)}")
    Q0 = _load_q0(args.q0, n) if args.q0 else np.zeros((n, n))
    try:
        sol = solve_branch(sys_, branches, Q0, tol=args.tol)
    except SolverError as exc:
        print(f"error: {exc} (residual {exc.residual:.3g})", file=sys.stderr)
        return EXIT_SOLVER
    matrix_residual, char_residuals = verify_solution(sys_, sol.S)
    payload = {
        "branches": sol.branches,
        "Q": _cmat(sol.Q),
        "M": _cmat(sol.M),
        "W": _cmat(sol.W),
        "S": _cmat(sol.S),
        "eigenvalues": [_cnum(v) for v in sol.eigenvalues],
        "solver_residual": sol.solver_residual,
        "matrix_residual": matrix_residual,
        "char_residuals": char_residuals,
        "iterations": sol.iterations,
    }
    print(json.dumps(payload, indent=2, sort_keys=True))
    if args.json:
        _write_json(args.json, payload)
    bound = 10.0 * args.tol
    if matrix_residual > bound or any(r > bound for r in char_residuals):
        print(f"error: verification residuals exceed {bound:.3g}", file=sys.stderr)
        return EXIT_SOLVER
    return EXIT_OK


def cmd_demo(args) -> int:
    sys_ = TdsSystem(_DEMO_A, _DEMO_B, _DEMO_TAU)
    region = Region(*_DEMO_REGION)
    claims = []

    def claim(name, ok, detail=""):
        print(f"{'PASS' if ok else 'FAIL'}: {name}" + (f" ({detail})" if detail else ""))
        claims.append((name, bool(ok)))

    report = find_roots(sys_, GridSpec(region, 0.05))
    roots = list(report.roots)
    print("roots found:", ", ".join(f"{s:.4f}" for s in roots))
    ok = all(any(abs(s - e) < 5e-4 for s in roots) for e in _DEMO_ROOTS)
    claim("expected root values located", ok)
    claim("argument-principle count matches",
          count_roots(sys_, region) == len(roots),
          f"{len(roots)} roots")

    pairs = branch_scan(sys_, report)
    first = pairs[0]
    claim("dominant pair classified to branch -1",
          first.includes_dominant and first.branch == -1,
          f"w22 = {first.w22:.4f}")
    claim("all scanned pairs classify to branch -1",
          all(p.branch == -1 for p in pairs))
    w22s = [p.w22 for p in pairs]
    claim("w22 sequence strictly decreasing",
          all(a > b for a, b in zip(w22s, w22s[1:])),
          ", ".join(f"{v:.4f}" for v in w22s))
    ok = all(abs(p.w22 - sys_.tau * (2.0 * p.pair[0].real - sys_.A[1, 1])) < 1e-12
             for p in pairs if abs(p.pair[0] - p.pair[1].conjugate()) < 1e-9)
    claim("w22 equals tau(2 Re(lambda) - a22)", ok)

    W1 = np.array(first.W, dtype=float)
    claim("first-pair W matches expected values",
          np.abs(W1 - np.array(_DEMO_W1)).max() < 5e-4)
    second = pairs[1]
    claim("second-pair W matches expected values",
          np.abs(np.real(second.W) - np.array(_DEMO_W2)).max() < 5e-4)

    M1 = np.real(w_to_m(W1))
    printed = np.array(_DEMO_M1_PRINTED)
    ratios = printed[1] / M1[1]
    claim("expected M values are 1000x the computed W exp(W) (known misprint, flagged)",
          np.all((ratios > 900) & (ratios < 1100)),
          f"computed {M1[1, 0]:.4e}, {M1[1, 1]:.4e}")

    try:
        sol = solve_branch(sys_, [0, -1], _DEMO_Q0)
        vals = sorted(sol.eigenvalues, key=lambda v: -v.real)
        ok = (abs(vals[0] - 0.8070) < 1e-3 and abs(vals[1] - (-2.1854)) < 1e-3
              and sol.solver_residual <= 1e-9)
        claim("branch -1 solve recovers the dominant root pair", ok,
              ", ".join(f"{v:.4f}" for v in vals))
    except SolverError as exc:
        claim("branch -1 solve recovers the dominant root pair", False, str(exc))

    claim("stability verdict is unstable",
          stability_verdict(report, rightmost_certified=True) == "unstable")

    if args.json:
        _write_json(args.json, {"claims": [{"name": n, "ok": ok} for n, ok in claims]})
    failed = [n for n, ok in claims if not ok]
    if failed:
        print(f"error: claim check failed: {failed[0]}", file=sys.stderr)
        return EXIT_CLAIM
    print(f"all {len(claims)} claims pass")
    return EXIT_OK


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="tdspectrum",
        description="Characteristic spectra of linear time-delay systems.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, system=True):
        if system:
            p.add_argument("--system", required=True,
                           help='system JSON file with keys "A", "B", "tau"')
        p.add_argument("--json", help="write structured output to this JSON file")

    p = sub.add_parser("roots", help="find roots on a rectangle with the grid oracle")
    add_common(p)
    p.add_argument("--region", nargs=4, type=float, required=True,
                   metavar=("RE_MIN", "RE_MAX", "IM_MIN", "IM_MAX"))
    p.add_argument("--step", type=float, default=0.05)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--csv", help="write roots to this CSV file")
    p.add_argument("--svg", help="write a root scatter plot to this SVG file")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("reverse", help="reverse pipeline for one root pair")
    add_common(p)
    p.add_argument("pair", nargs=4, type=float,
                   metavar=("RE1", "IM1", "RE2", "IM2"))
    p.set_defaults(func=cmd_reverse)

    p = sub.add_parser("solve", help="matrix Lambert W branch solve for Q")
    add_common(p)
    p.add_argument("--q0", help='seed JSON file with key "Q" (default: zeros)')
    p.add_argument("--branches", nargs="+", type=int,
                   help="branch index per eigenvalue (default: all 0)")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("demo", help="run the built-in reference example end to end")
    add_common(p, system=False)
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ContourError, ResolutionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COUNT
    except SolverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except (ValueError, OSError, DefectiveMatrixError, InconsistencyError,
            PairingError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
