"""Slow, obviously-correct reference computations used only by tests."""

from fractions import Fraction

import numpy as np

# Every finite float32 is an integer multiple of 2**-149.
_F32_SCALE = 2.0**149


def exact_orient(a, b, c) -> int:
    ax, ay, bx, by, cx, cy = (Fraction(float(v)) for v in (*a, *b, *c))
    d = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return (d > 0) - (d < 0)


def _as_ints(arr) -> np.ndarray:
    scaled = np.asarray(arr, dtype=np.float32).astype(np.float64) * _F32_SCALE
    return np.array([int(v) for v in scaled.tolist()], dtype=object)


def exact_orient_f32(ax, ay, bx, by, cx, cy) -> np.ndarray:
    """Exact orientation signs for float32 triples using Python integers."""
    ax, ay, bx, by, cx, cy = (_as_ints(v) for v in (ax, ay, bx, by, cx, cy))
    d = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return np.array([(v > 0) - (v < 0) for v in d.tolist()], dtype=np.int8)


def sequential_support(xs, ys) -> list[int]:
    """Plain loop: argmax of x, -x, y, -y, x+y, y-x, -x-y, x-y, first index on ties."""
    best = [None] * 8
    idx = [0] * 8
    for i, (x, y) in enumerate(zip(np.asarray(xs, np.float64).tolist(),
                                   np.asarray(ys, np.float64).tolist())):
        vals = (x, -x, y, -y, x + y, y - x, -x - y, x - y)
        for k, v in enumerate(vals):
            if best[k] is None or v > best[k]:
                best[k] = v
                idx[k] = i
    return idx


def manhattan_corners(xs, ys) -> list[int]:
    """Indices minimising L1 distance to the bounding-box corners tr, tl, bl, br."""
    x = np.asarray(xs, np.float64)
    y = np.asarray(ys, np.float64)
    corners = [(x.max(), y.max()), (x.min(), y.max()), (x.min(), y.min()), (x.max(), y.min())]
    out = []
    for cx, cy in corners:
        d = np.abs(x - cx) + np.abs(y - cy)
        out.append(int(np.argmin(d)))
    return out


def sequential_inside(vertices, p) -> bool:
    m = len(vertices)
    return all(exact_orient(vertices[i], vertices[(i + 1) % m], p) > 0 for i in range(m))


def sequential_compact(xs, ys, bits):
    ox, oy = [], []
    for x, y, b in zip(xs.tolist(), ys.tolist(), bits.tolist()):
        if b:
            ox.append(x)
            oy.append(y)
    return np.array(ox, dtype=xs.dtype), np.array(oy, dtype=ys.dtype)


def running_sum(bits) -> tuple[list[int], int]:
    out = []
    acc = 0
    for b in bits.tolist():
        out.append(acc)
        acc += b
    return out, acc


def adversarial_set(rng, kind: str, n: int):
    """Point sets that stress hull degeneracies, as (xs, ys) float32 arrays."""
    if kind == "uniform":
        xs, ys = rng.random(n), rng.random(n)
    elif kind == "grid":
        # small lattice: many duplicates and long collinear hull edges
        k = int(rng.integers(2, 12))
        xs, ys = rng.integers(0, k, n), rng.integers(0, k, n)
    elif kind == "lines":
        t = rng.integers(-20, 21, n)
        which = rng.integers(0, 3, n)
        xs = np.choose(which, [t, t, np.full(n, 20)])
        ys = np.choose(which, [np.zeros(n, int), t, t])
    elif kind == "duplicates":
        base = rng.random((max(1, n // 50), 2))
        pick = rng.integers(0, len(base), n)
        xs, ys = base[pick, 0], base[pick, 1]
    elif kind == "square_edges":
        t = rng.integers(0, 101, n)
        side = rng.integers(0, 4, n)
        xs = np.choose(side, [t, np.full(n, 100), 100 - t, np.zeros(n, int)])
        ys = np.choose(side, [np.zeros(n, int), t, np.full(n, 100), 100 - t])
    elif kind == "circle":
        theta = np.sort(rng.random(n)) * 2 * np.pi
        xs, ys = np.cos(theta) * 1000, np.sin(theta) * 1000
    else:
        raise ValueError(kind)
    return np.asarray(xs, np.float32), np.asarray(ys, np.float32)


ADVERSARIAL_KINDS = ("uniform", "grid", "lines", "duplicates", "square_edges", "circle")
