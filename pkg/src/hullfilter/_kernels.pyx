# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops.

Every function here has a twin in ``_fallback.py`` with the same signature
and bit-identical results.  Loops run with the GIL released so callers can
split index ranges across threads.
"""

import numpy as np
cimport numpy as cnp
from cython cimport floating
from libc.math cimport fma, fabs
from libc.stdint cimport int64_t, uint8_t

cnp.import_array()

NAME = "cython"

cdef double _EPS = 1.1102230246251565e-16  # 2**-53
cdef double CCW_ERRBOUND_A = (3.0 + 16.0 * _EPS) * _EPS


cdef inline void _two_sum(double a, double b, double* s, double* err) noexcept nogil:
    cdef double x = a + b
    cdef double bv = x - a
    cdef double av = x - bv
    s[0] = x
    err[0] = (a - av) + (b - bv)


cdef int _orient_exact(double ax, double ay, double bx, double by,
                       double cx, double cy) noexcept nogil:
    # ax*by - ax*cy - ay*bx + ay*cx + bx*cy - by*cx, each product split
    # exactly into hi + lo with fma, then summed by expansion growth.
    cdef double terms[12]
    cdef double e[12]
    cdef double u[6]
    cdef double v[6]
    cdef double sg[6]
    cdef double hi, q, h
    cdef int i, j, m = 0
    u[0] = ax; v[0] = by; sg[0] = 1.0
    u[1] = ax; v[1] = cy; sg[1] = -1.0
    u[2] = ay; v[2] = bx; sg[2] = -1.0
    u[3] = ay; v[3] = cx; sg[3] = 1.0
    u[4] = bx; v[4] = cy; sg[4] = 1.0
    u[5] = by; v[5] = cx; sg[5] = -1.0
    for i in range(6):
        hi = u[i] * v[i]
        terms[2 * i] = sg[i] * hi
        terms[2 * i + 1] = sg[i] * fma(u[i], v[i], -hi)
    for i in range(12):
        q = terms[i]
        for j in range(m):
            _two_sum(q, e[j], &q, &h)
            e[j] = h
        e[m] = q
        m += 1
    for i in range(m - 1, -1, -1):
        if e[i] > 0.0:
            return 1
        if e[i] < 0.0:
            return -1
    return 0


cdef inline int _orient(double ax, double ay, double bx, double by,
                        double cx, double cy) noexcept nogil:
    cdef double detleft = (ax - cx) * (by - cy)
    cdef double detright = (ay - cy) * (bx - cx)
    cdef double det = detleft - detright
    cdef double detsum
    if detleft > 0.0:
        if detright <= 0.0:
            return (det > 0.0) - (det < 0.0)
        detsum = detleft + detright
    elif detleft < 0.0:
        if detright >= 0.0:
            return (det > 0.0) - (det < 0.0)
        detsum = -detleft - detright
    else:
        return (det > 0.0) - (det < 0.0)
    if det > CCW_ERRBOUND_A * detsum or -det > CCW_ERRBOUND_A * detsum:
        return (det > 0.0) - (det < 0.0)
    return _orient_exact(ax, ay, bx, by, cx, cy)


def orient(double ax, double ay, double bx, double by, double cx, double cy):
    return _orient(ax, ay, bx, by, cx, cy)


def orient_many(const double[::1] ax, const double[::1] ay,
                const double[::1] bx, const double[::1] by,
                const double[::1] cx, const double[::1] cy):
    cdef Py_ssize_t i, n = ax.shape[0]
    out = np.empty(n, dtype=np.int8)
    cdef cnp.int8_t[::1] o = out
    with nogil:
        for i in range(n):
            o[i] = <cnp.int8_t>_orient(ax[i], ay[i], bx[i], by[i], cx[i], cy[i])
    return out


def support_range(const floating[::1] xs, const floating[::1] ys,
                  Py_ssize_t start, Py_ssize_t stop):
    """Argmax of x, -x, y, -y, x+y, y-x, -x-y, x-y over [start, stop).

    Objectives are evaluated in binary64; only a strictly larger value
    replaces the incumbent, so ties resolve to the smallest index.
    """
    cdef double best[8]
    cdef Py_ssize_t idx[8]
    cdef double val[8]
    cdef double x, y
    cdef Py_ssize_t i
    cdef int k
    if stop <= start:
        raise ValueError("empty range")
    with nogil:
        x = xs[start]
        y = ys[start]
        best[0] = x; best[1] = -x; best[2] = y; best[3] = -y
        best[4] = x + y; best[5] = y - x; best[6] = -x - y; best[7] = x - y
        for k in range(8):
            idx[k] = start
        for i in range(start + 1, stop):
            x = xs[i]
            y = ys[i]
            val[0] = x; val[1] = -x; val[2] = y; val[3] = -y
            val[4] = x + y; val[5] = y - x; val[6] = -x - y; val[7] = x - y
            for k in range(8):
                if val[k] > best[k]:
                    best[k] = val[k]
                    idx[k] = i
    return (tuple([idx[k] for k in range(8)]), tuple([best[k] for k in range(8)]))


def flag_range(const floating[::1] xs, const floating[::1] ys,
               const double[::1] vx, const double[::1] vy,
               uint8_t[::1] out, Py_ssize_t start, Py_ssize_t stop):
    """Write 0 for points strictly inside the CCW polygon (vx, vy), else 1.

    Returns how many points in the range were flagged 0.
    """
    cdef Py_ssize_t i
    cdef int k, m = vx.shape[0]
    cdef int inside
    cdef Py_ssize_t dropped = 0
    cdef double px, py
    cdef double ex[8]
    cdef double ey[8]
    if m > 8:
        raise ValueError("polygon has more than 8 vertices")
    for k in range(m):
        ex[k] = vx[(k + 1) % m]
        ey[k] = vy[(k + 1) % m]
    with nogil:
        for i in range(start, stop):
            px = xs[i]
            py = ys[i]
            inside = 1
            for k in range(m):
                if _orient(vx[k], vy[k], ex[k], ey[k], px, py) <= 0:
                    inside = 0
                    break
            if inside:
                out[i] = 0
                dropped += 1
            else:
                out[i] = 1
    return dropped


def exclusive_scan(const uint8_t[::1] bits, int64_t[::1] out):
    cdef Py_ssize_t i, n = bits.shape[0]
    cdef int64_t acc = 0
    with nogil:
        for i in range(n):
            out[i] = acc
            acc += bits[i]
    return acc


def segmented_scan(const uint8_t[::1] bits, Py_ssize_t seg,
                   int64_t[::1] local, int64_t[::1] totals):
    cdef Py_ssize_t i, n = bits.shape[0]
    cdef int64_t acc = 0
    with nogil:
        for i in range(n):
            if i % seg == 0:
                if i > 0:
                    totals[i // seg - 1] = acc
                acc = 0
            local[i] = acc
            acc += bits[i]
        if n > 0:
            totals[(n - 1) // seg] = acc


def scatter(const floating[::1] xs, const floating[::1] ys,
            const uint8_t[::1] bits, const int64_t[::1] offsets,
            floating[::1] outx, floating[::1] outy,
            Py_ssize_t start, Py_ssize_t stop):
    cdef Py_ssize_t i
    cdef int64_t j
    with nogil:
        for i in range(start, stop):
            if bits[i]:
                j = offsets[i]
                outx[j] = xs[i]
                outy[j] = ys[i]


def scatter_segmented(const floating[::1] xs, const floating[::1] ys,
                      const uint8_t[::1] bits, const int64_t[::1] local,
                      const int64_t[::1] glob, Py_ssize_t seg,
                      floating[::1] outx, floating[::1] outy,
                      Py_ssize_t start, Py_ssize_t stop):
    cdef Py_ssize_t i
    cdef int64_t j
    with nogil:
        for i in range(start, stop):
            if bits[i]:
                j = local[i] + glob[i // seg]
                outx[j] = xs[i]
                outy[j] = ys[i]


def count_range(const uint8_t[::1] bits, Py_ssize_t start, Py_ssize_t stop):
    cdef Py_ssize_t i
    cdef int64_t c = 0
    with nogil:
        for i in range(start, stop):
            c += bits[i]
    return c


def copy_if_range(const floating[::1] xs, const floating[::1] ys,
                  const uint8_t[::1] bits, Py_ssize_t start, Py_ssize_t stop,
                  floating[::1] outx, floating[::1] outy, int64_t dst):
    cdef Py_ssize_t i
    with nogil:
        for i in range(start, stop):
            if bits[i] != 0:
                outx[dst] = xs[i]
                outy[dst] = ys[i]
                dst += 1
    return dst


def select_flagged(const uint8_t[::1] bits, int64_t[::1] idx_out):
    cdef Py_ssize_t i, n = bits.shape[0]
    cdef int64_t c = 0
    with nogil:
        for i in range(n):
            if bits[i]:
                idx_out[c] = i
                c += 1
    return c


def compact_sequential(const floating[::1] xs, const floating[::1] ys,
                       const uint8_t[::1] bits,
                       floating[::1] outx, floating[::1] outy):
    cdef Py_ssize_t i, n = bits.shape[0]
    cdef int64_t c = 0
    with nogil:
        for i in range(n):
            if bits[i]:
                outx[c] = xs[i]
                outy[c] = ys[i]
                c += 1
    return c


def chain(const floating[::1] xs, const floating[::1] ys, const int64_t[::1] order):
    """Monotone-chain sweep over lexicographically sorted, duplicate-free indices.

    Returns the strict hull as indices into ``xs``/``ys``, counterclockwise,
    starting at ``order[0]``.
    """
    cdef Py_ssize_t m = order.shape[0]
    if m <= 1:
        return np.asarray(order, dtype=np.int64).copy()
    hull_arr = np.empty(2 * m, dtype=np.int64)
    cdef int64_t[::1] h = hull_arr
    cdef Py_ssize_t i, k = 0, t
    cdef int64_t a, b, c
    with nogil:
        for i in range(m):
            c = order[i]
            while k >= 2:
                a = h[k - 2]
                b = h[k - 1]
                if _orient(xs[a], ys[a], xs[b], ys[b], xs[c], ys[c]) > 0:
                    break
                k -= 1
            h[k] = c
            k += 1
        t = k + 1
        for i in range(m - 2, -1, -1):
            c = order[i]
            while k >= t:
                a = h[k - 2]
                b = h[k - 1]
                if _orient(xs[a], ys[a], xs[b], ys[b], xs[c], ys[c]) > 0:
                    break
                k -= 1
            h[k] = c
            k += 1
    return hull_arr[:k - 1].copy()
