"""Eight-vertex discard polygon and per-point candidate flags.

The polygon's vertices are support points: the input points that maximise
x, -x, y, -y and the four diagonal functionals x+y, y-x, -x-y, x-y.  The
diagonal ones are exactly the points with the smallest Manhattan distance to
the corners of the bounding box, since e.g. (x_max - x) + (y_max - y) is a
constant minus (x + y).  Every point strictly inside that polygon is strictly
inside the convex hull and can be dropped before the hull stage.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import _backend
from ._parallel import chunk_ranges, map_ranges, resolve_threads
from .errors import DegeneratePolygon, EmptySet, PrecisionMismatch
from .geometry import (
    BoundingBox,
    Orientation,
    Point2,
    PointSet,
    Precision,
    orientation,
)

log = logging.getLogger(__name__)

__all__ = [
    "SupportPoints",
    "ExtremePoints",
    "CornerPoints",
    "OctagonFilter",
    "FlagVector",
    "find_support_points",
    "find_extreme_points",
    "find_corner_points",
    "build_octagon",
    "point_strictly_inside",
    "flag_candidates",
    "candidate_flags",
]

# Kernel objective order: x, -x, y, -y, x+y, y-x, -x-y, x-y.
_RIGHT, _LEFT, _TOP, _BOTTOM, _C_TR, _C_TL, _C_BL, _C_BR = range(8)


class ExtremePoints(NamedTuple):
    left: int
    right: int
    top: int
    bottom: int


class CornerPoints(NamedTuple):
    c_tr: int
    c_tl: int
    c_bl: int
    c_br: int


@dataclass(frozen=True)
class SupportPoints:
    idx_left: int
    idx_right: int
    idx_top: int
    idx_bottom: int
    idx_c_tr: int
    idx_c_tl: int
    idx_c_bl: int
    idx_c_br: int

    def cycle(self) -> tuple[int, ...]:
        """Indices in counterclockwise order, starting at the rightmost point."""
        return (
            self.idx_right, self.idx_c_tr, self.idx_top, self.idx_c_tl,
            self.idx_left, self.idx_c_bl, self.idx_bottom, self.idx_c_br,
        )

    @property
    def extremes(self) -> ExtremePoints:
        return ExtremePoints(self.idx_left, self.idx_right, self.idx_top, self.idx_bottom)

    @property
    def corners(self) -> CornerPoints:
        return CornerPoints(self.idx_c_tr, self.idx_c_tl, self.idx_c_bl, self.idx_c_br)


@dataclass(frozen=True, eq=False)
class FlagVector:
    """One entry per point: 1 keeps the point as a hull candidate, 0 drops it."""

    bits: np.ndarray

    def __post_init__(self):
        bits = np.ascontiguousarray(self.bits, dtype=np.uint8)
        if bits.ndim != 1:
            raise ValueError("flag vector must be one-dimensional")
        if bits.size and bits.max() > 1:
            raise ValueError("flags must be 0 or 1")
        bits.flags.writeable = False
        object.__setattr__(self, "bits", bits)

    @classmethod
    def ones(cls, n: int) -> "FlagVector":
        return cls(np.ones(n, dtype=np.uint8))

    @property
    def n(self) -> int:
        return len(self.bits)

    def __len__(self) -> int:
        return len(self.bits)

    def count(self) -> int:
        return int(np.count_nonzero(self.bits))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FlagVector):
            return NotImplemented
        return bool(np.array_equal(self.bits, other.bits))


@dataclass(frozen=True, eq=False)
class OctagonFilter:
    """Counterclockwise convex polygon with 3 to 8 vertices taken from the input."""

    vertices: tuple[Point2, ...]
    source: SupportPoints
    precision: Precision = Precision.F32
    vertex_indices: tuple[int, ...] = ()
    vx: np.ndarray = field(init=False, repr=False)
    vy: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "vx", np.array([v.x for v in self.vertices], dtype=np.float64))
        object.__setattr__(self, "vy", np.array([v.y for v in self.vertices], dtype=np.float64))

    def __len__(self) -> int:
        return len(self.vertices)

    def edges(self):
        m = len(self.vertices)
        for i in range(m):
            yield self.vertices[i], self.vertices[(i + 1) % m]


def find_support_points(s: PointSet, threads: int | None = None) -> SupportPoints:
    """All eight support points in one pass (chunked across threads for large sets).

    Chunks are combined in index order and a later chunk only wins on a
    strictly larger objective, so the result never depends on ``threads``.
    """
    n = s.n
    if n == 0:
        raise EmptySet("support points of an empty point set")
    k = _backend.kernels()
    t = resolve_threads(threads, n)
    parts = map_ranges(
        lambda a, b: k.support_range(s.xs, s.ys, a, b), chunk_ranges(n, t), t
    )
    best_idx = list(parts[0][0])
    best_val = list(parts[0][1])
    for idx, val in parts[1:]:
        for j in range(8):
            if val[j] > best_val[j]:
                best_val[j] = val[j]
                best_idx[j] = idx[j]
    return SupportPoints(
        idx_left=best_idx[_LEFT],
        idx_right=best_idx[_RIGHT],
        idx_top=best_idx[_TOP],
        idx_bottom=best_idx[_BOTTOM],
        idx_c_tr=best_idx[_C_TR],
        idx_c_tl=best_idx[_C_TL],
        idx_c_bl=best_idx[_C_BL],
        idx_c_br=best_idx[_C_BR],
    )


def find_extreme_points(s: PointSet, threads: int | None = None) -> ExtremePoints:
    return find_support_points(s, threads).extremes


def find_corner_points(
    s: PointSet, bb: BoundingBox | None = None, threads: int | None = None
) -> CornerPoints:
    """Points closest (L1) to each bounding-box corner.

    Computed as argmax of x+y, y-x, -x-y, x-y, which needs no bounding box;
    ``bb`` is accepted for interface symmetry only.
    """
    return find_support_points(s, threads).corners


def _dedupe_cyclic(verts: list, ids: list) -> tuple[list, list]:
    out_v, out_i = [], []
    for v, i in zip(verts, ids):
        if not out_v or v != out_v[-1]:
            out_v.append(v)
            out_i.append(i)
    while len(out_v) > 1 and out_v[0] == out_v[-1]:
        out_v.pop()
        out_i.pop()
    return out_v, out_i


def build_octagon(
    s: PointSet, support: SupportPoints | None = None, threads: int | None = None
) -> OctagonFilter:
    if s.n == 0:
        raise EmptySet("cannot build a polygon from an empty set")
    if s.n < 3:
        raise DegeneratePolygon(f"need at least 3 points, got {s.n}")
    if support is None:
        support = find_support_points(s, threads)
    ids = list(support.cycle())
    verts = [s[i] for i in ids]
    verts, ids = _dedupe_cyclic(verts, ids)

    # A strictly clockwise triple can only come from rounding in the
    # objectives; dropping the middle vertex keeps the polygon inside the hull.
    while len(verts) >= 3:
        m = len(verts)
        bad = next(
            (i for i in range(m)
             if orientation(verts[i - 1], verts[i], verts[(i + 1) % m]) is Orientation.CLOCKWISE),
            None,
        )
        if bad is None:
            break
        log.debug("dropping non-convex octagon vertex %s", verts[bad])
        del verts[bad]
        del ids[bad]
        verts, ids = _dedupe_cyclic(verts, ids)

    if len(verts) < 3:
        raise DegeneratePolygon(f"only {len(verts)} distinct support vertices")
    m = len(verts)
    if all(
        orientation(verts[i - 1], verts[i], verts[(i + 1) % m]) is Orientation.COLLINEAR
        for i in range(m)
    ):
        raise DegeneratePolygon("support vertices are collinear")
    return OctagonFilter(tuple(verts), support, s.precision, tuple(ids))


def point_strictly_inside(oct: OctagonFilter, p) -> bool:
    return all(
        orientation(a, b, p) is Orientation.COUNTERCLOCKWISE for a, b in oct.edges()
    )


def flag_candidates(
    s: PointSet, oct: OctagonFilter, threads: int | None = None
) -> FlagVector:
    if oct.precision is not s.precision:
        raise PrecisionMismatch(
            f"polygon is {oct.precision.value} but points are {s.precision.value}"
        )
    n = s.n
    out = np.empty(n, dtype=np.uint8)
    if n:
        k = _backend.kernels()
        t = resolve_threads(threads, n)
        map_ranges(
            lambda a, b: k.flag_range(s.xs, s.ys, oct.vx, oct.vy, out, a, b),
            chunk_ranges(n, t),
            t,
        )
    return FlagVector(out)


def candidate_flags(
    s: PointSet, threads: int | None = None
) -> tuple[FlagVector, OctagonFilter | None]:
    """Build the polygon and flag points; degenerate inputs keep every point."""
    try:
        oct = build_octagon(s, threads=threads)
    except DegeneratePolygon as exc:
        log.info("filter bypassed: %s", exc)
        return FlagVector.ones(s.n), None
    return flag_candidates(s, oct, threads), oct
