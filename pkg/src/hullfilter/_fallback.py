"""Pure-Python/numpy twins of the compiled kernels in ``_kernels.pyx``.

Same signatures, same results bit for bit.  Used when the extension is not
built or when ``HULLFILTER_BACKEND=python`` is set.
"""

import numpy as np

from .geometry import orientation, orientation_signs

NAME = "python"


def orient(ax, ay, bx, by, cx, cy):
    return int(orientation((ax, ay), (bx, by), (cx, cy)))


def orient_many(ax, ay, bx, by, cx, cy):
    return orientation_signs(ax, ay, bx, by, cx, cy)


def support_range(xs, ys, start, stop):
    if stop <= start:
        raise ValueError("empty range")
    x = xs[start:stop].astype(np.float64)
    y = ys[start:stop].astype(np.float64)
    objectives = (x, -x, y, -y, x + y, y - x, -x - y, x - y)
    idx = tuple(int(np.argmax(o)) + start for o in objectives)
    val = tuple(float(o[i - start]) for o, i in zip(objectives, idx))
    return idx, val


def flag_range(xs, ys, vx, vy, out, start, stop):
    px = xs[start:stop].astype(np.float64)
    py = ys[start:stop].astype(np.float64)
    inside = np.ones(stop - start, dtype=bool)
    m = len(vx)
    for k in range(m):
        j = (k + 1) % m
        live = np.flatnonzero(inside)
        if live.size == 0:
            break
        signs = orientation_signs(vx[k], vy[k], vx[j], vy[j], px[live], py[live])
        inside[live[signs <= 0]] = False
    out[start:stop] = (~inside).astype(np.uint8)
    return int(inside.sum())


def exclusive_scan(bits, out):
    csum = np.cumsum(bits, dtype=np.int64)
    if len(bits):
        out[0] = 0
        out[1:] = csum[:-1]
        return int(csum[-1])
    return 0


def segmented_scan(bits, seg, local, totals):
    n = len(bits)
    nseg = len(totals)
    padded = np.zeros(nseg * seg, dtype=np.int64)
    padded[:n] = bits
    blocks = padded.reshape(nseg, seg)
    inclusive = np.cumsum(blocks, axis=1)
    totals[:] = inclusive[:, -1]
    local[:] = (inclusive - blocks).ravel()[:n]


def scatter(xs, ys, bits, offsets, outx, outy, start, stop):
    sel = np.flatnonzero(bits[start:stop]) + start
    dst = offsets[sel]
    outx[dst] = xs[sel]
    outy[dst] = ys[sel]


def scatter_segmented(xs, ys, bits, local, glob, seg, outx, outy, start, stop):
    sel = np.flatnonzero(bits[start:stop]) + start
    dst = local[sel] + glob[sel // seg]
    outx[dst] = xs[sel]
    outy[dst] = ys[sel]


def count_range(bits, start, stop):
    return int(np.count_nonzero(bits[start:stop]))


def copy_if_range(xs, ys, bits, start, stop, outx, outy, dst):
    keep = bits[start:stop] != 0
    cx = xs[start:stop][keep]
    cy = ys[start:stop][keep]
    outx[dst:dst + len(cx)] = cx
    outy[dst:dst + len(cy)] = cy
    return dst + len(cx)


def select_flagged(bits, idx_out):
    sel = np.flatnonzero(bits)
    idx_out[:len(sel)] = sel
    return len(sel)


def compact_sequential(xs, ys, bits, outx, outy):
    c = 0
    xl, yl = xs.tolist(), ys.tolist()
    for i, b in enumerate(bits.tolist()):
        if b:
            outx[c] = xl[i]
            outy[c] = yl[i]
            c += 1
    return c


def chain(xs, ys, order):
    m = len(order)
    if m <= 1:
        return np.asarray(order, dtype=np.int64).copy()
    xl = xs.tolist()
    yl = ys.tolist()
    pts = [(xl[i], yl[i]) for i in order.tolist()]
    ids = order.tolist()

    def half(seq):
        out = []
        for i in seq:
            while len(out) >= 2 and orientation(pts[out[-2]], pts[out[-1]], pts[i]) <= 0:
                out.pop()
            out.append(i)
        return out

    lower = half(range(m))
    upper = half(range(m - 1, -1, -1))
    hull = lower[:-1] + upper[:-1]
    return np.asarray([ids[i] for i in hull], dtype=np.int64)
