import os
import subprocess
import sys

import numpy as np
import pytest

from hullfilter import PointSet, _backend, _fallback, build_octagon
from hullfilter.hull import _sorted_unique

from _oracles import adversarial_set

compiled = pytest.importorskip("hullfilter._kernels")

DTYPES = [np.float32, np.float64]


@pytest.mark.parametrize("dtype", DTYPES)
def test_support_range(rng, dtype):
    xs = rng.integers(-30, 30, 50_000).astype(dtype)
    ys = rng.standard_normal(50_000).astype(dtype)
    for a, b in [(0, 50_000), (17, 18), (1000, 40_000)]:
        assert compiled.support_range(xs, ys, a, b) == _fallback.support_range(xs, ys, a, b)


@pytest.mark.parametrize("dtype", DTYPES)
def test_flag_range(rng, dtype):
    xs, ys = adversarial_set(rng, "grid", 20_000)
    xs, ys = xs.astype(dtype), ys.astype(dtype)
    oct = build_octagon(PointSet(xs, ys))
    outs = []
    for k in (compiled, _fallback):
        out = np.full(len(xs), 9, dtype=np.uint8)
        dropped = k.flag_range(xs, ys, oct.vx, oct.vy, out, 100, 19_000)
        outs.append((dropped, out))
    assert outs[0][0] == outs[1][0]
    assert np.array_equal(outs[0][1], outs[1][1])


def test_orient_many(rng):
    a = [rng.standard_normal(5000) for _ in range(4)]
    t = rng.random(5000)
    cx = a[0] + t * (a[2] - a[0])
    cy = a[1] + t * (a[3] - a[1])
    args = (*a, cx, cy)
    assert np.array_equal(compiled.orient_many(*args), _fallback.orient_many(*args))
    for i in range(200):
        row = [v[i] for v in args]
        assert compiled.orient(*row) == _fallback.orient(*row)


def test_scans_and_compaction(rng):
    bits = (rng.random(10_001) < 0.4).astype(np.uint8)
    n = len(bits)
    o1, o2 = np.empty(n, np.int64), np.empty(n, np.int64)
    assert compiled.exclusive_scan(bits, o1) == _fallback.exclusive_scan(bits, o2)
    assert np.array_equal(o1, o2)
    for seg in (1, 7, 256):
        nseg = -(-n // seg)
        res = []
        for k in (compiled, _fallback):
            local, totals = np.empty(n, np.int64), np.empty(nseg, np.int64)
            k.segmented_scan(bits, seg, local, totals)
            res.append((local, totals))
        assert np.array_equal(res[0][0], res[1][0]) and np.array_equal(res[0][1], res[1][1])
    i1, i2 = np.empty(n, np.int64), np.empty(n, np.int64)
    c = compiled.select_flagged(bits, i1)
    assert c == _fallback.select_flagged(bits, i2)
    assert np.array_equal(i1[:c], i2[:c])
    assert compiled.count_range(bits, 5, 9000) == _fallback.count_range(bits, 5, 9000)


@pytest.mark.parametrize("kind", ["uniform", "grid", "lines", "circle"])
def test_chain(rng, kind):
    s = PointSet(*adversarial_set(rng, kind, 3000))
    order = _sorted_unique(s)
    assert np.array_equal(compiled.chain(s.xs, s.ys, order), _fallback.chain(s.xs, s.ys, order))


def test_use_backend_restores():
    before = _backend.active_name()
    with _backend.use_backend("python"):
        assert _backend.active_name() == "python"
    assert _backend.active_name() == before
    with pytest.raises(ValueError):
        _backend.set_backend("fortran")


def test_environment_variable_selects_fallback():
    env = dict(os.environ, HULLFILTER_BACKEND="python")
    out = subprocess.run(
        [sys.executable, "-c", "import hullfilter; print(hullfilter.backend())"],
        capture_output=True, text=True, env=env, check=True,
    )
    assert out.stdout.strip() == "python"
