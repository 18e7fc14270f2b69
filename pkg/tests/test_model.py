"""System model, characteristic function, reports, and the JSON loader."""
import json

import numpy as np
import pytest

from tdspectrum import (
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
from tdspectrum.model import char_fn_grid

SYS = TdsSystem([[0.0, 1.0], [-5.0, 10.0]], [[0.0, 0.0], [-3.0, -3.0]], 1.0)


def test_system_validation():
    with pytest.raises(ValueError):
        TdsSystem([[1.0, 2.0]], [[1.0, 2.0]], 1.0)          # not square
    with pytest.raises(ValueError):
        TdsSystem([[1.0]], [[1.0, 0.0], [0.0, 1.0]], 1.0)   # shape mismatch
    with pytest.raises(ValueError):
        TdsSystem([[np.inf]], [[1.0]], 1.0)
    with pytest.raises(ValueError):
        TdsSystem([[1.0]], [[1.0]], 0.0)                    # tau must be > 0
    with pytest.raises(ValueError):
        TdsSystem([[1.0]], [[1.0]], -2.0)
    assert TdsSystem([[1.0]], [[0.5]], 0.3).n == 1


def test_region_validation_and_contains():
    reg = Region(-1.0, 2.0, 0.0, 3.0)
    assert reg.width == 3.0 and reg.height == 3.0
    assert reg.contains(0.5 + 1.0j)
    assert not reg.contains(2.5)
    with pytest.raises(ValueError):
        Region(1.0, 1.0, 0.0, 3.0)
    with pytest.raises(ValueError):
        Region(-1.0, 2.0, 4.0, 3.0)


def test_char_fn_matches_determinant():
    rng = np.random.default_rng(5)
    for _ in range(50):
        sys_ = TdsSystem(rng.normal(size=(2, 2)), rng.normal(size=(2, 2)),
                         rng.uniform(0.2, 2.0))
        s = complex(rng.normal(), rng.normal())
        det = np.linalg.det(char_matrix(sys_, s))
        assert abs(char_fn(sys_, s) - det) < 1e-10 * (1.0 + abs(det))


def test_char_fn_grid_matches_pointwise():
    S = np.array([[0.1 + 0.2j, -1.0 + 3.0j], [2.0 - 1.0j, 0.0j]])
    G = char_fn_grid(SYS, S)
    for idx in np.ndindex(S.shape):
        assert abs(G[idx] - char_fn(SYS, S[idx])) < 1e-12 * (1.0 + abs(G[idx]))


def test_residual_scaling():
    # far from the origin the scaled residual stays comparable
    s = 100.0 + 100.0j
    assert residual(SYS, s) <= abs(char_fn(SYS, s))
    assert residual(SYS, 0.807007412314) < 1e-10


def test_sort_roots_dominance_order():
    roots = [-2.0 + 0j, 1.0 + 3.0j, 1.0 + 0j, 1.0 - 3.0j]
    assert sort_roots(roots) == [1.0 + 0j, 1.0 + 3.0j, 1.0 - 3.0j, -2.0 + 0j]


def test_stability_verdict():
    reg = Region(-4.0, 2.0, -1.0, 8.0)
    unstable = SpectrumReport(roots=[0.8 + 0j, -2.2 + 0j], region=reg)
    assert stability_verdict(unstable) == "unstable"
    lhp = SpectrumReport(roots=[-0.5 + 0j], region=reg)
    assert stability_verdict(lhp) == "inconclusive"
    assert stability_verdict(lhp, rightmost_certified=True) == "stable"
    assert stability_verdict(SpectrumReport(), rightmost_certified=True) == "inconclusive"
    with pytest.raises(ValueError):
        SpectrumReport().rightmost()


def _write(tmp_path, payload):
    path = tmp_path / "sys.json"
    path.write_text(json.dumps(payload))
    return path


def test_load_system_ok(tmp_path):
    path = _write(tmp_path, {"A": [[0, 1], [-5, 10]],
                             "B": [[0, 0], [-3, -3]], "tau": 1.0})
    sys_ = load_system(path)
    assert sys_.n == 2 and sys_.tau == 1.0


def test_load_system_errors_name_the_key(tmp_path):
    with pytest.raises(ValueError, match='"tau"'):
        load_system(_write(tmp_path, {"A": [[1.0]], "B": [[1.0]]}))
    with pytest.raises(ValueError, match='"A"'):
        load_system(_write(tmp_path, {"B": [[1.0]], "tau": 1.0}))
    with pytest.raises(ValueError, match='"B"'):
        load_system(_write(tmp_path, {"A": [[1.0]], "B": [["x"]], "tau": 1.0}))
    with pytest.raises(ValueError, match='"tau"'):
        load_system(_write(tmp_path, {"A": [[1.0]], "B": [[1.0]], "tau": -1.0}))
    with pytest.raises(ValueError, match='"B"'):
        load_system(_write(tmp_path, {"A": [[1.0]], "B": [[1.0, 0.0]], "tau": 1.0}))
