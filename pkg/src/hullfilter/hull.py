"""Exact strict convex hulls and the filtered hull pipeline.

A :class:`Hull` is canonical: counterclockwise, starting at the
lexicographically smallest point, no duplicate vertices and no collinear
boundary points.  Two hulls of the same set are therefore equal
element by element.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .compaction import DEFAULT_SEGMENT_SIZE, CompactionStrategy, compact
from .errors import DegeneratePolygon, EmptySet
from .filter import FlagVector, build_octagon, find_support_points, flag_candidates
from .geometry import Point2, PointSet, orientation_signs

log = logging.getLogger(__name__)

__all__ = [
    "Hull",
    "FilterStats",
    "STAGES",
    "monotone_chain",
    "gift_wrapping",
    "hull_equal",
    "filtered_hull",
]

STAGES = ("polygon", "flagging", "compaction", "hull")


@dataclass(frozen=True, eq=False)
class Hull:
    xs: np.ndarray
    ys: np.ndarray

    @property
    def vertices(self) -> list[Point2]:
        return [Point2(x, y) for x, y in zip(self.xs.tolist(), self.ys.tolist())]

    def __len__(self) -> int:
        return len(self.xs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Hull):
            return NotImplemented
        return hull_equal(self, other)

    __hash__ = None

    def as_pointset(self) -> PointSet:
        return PointSet._trusted(self.xs.copy(), self.ys.copy())


def hull_equal(a: Hull, b: Hull) -> bool:
    # Both start at the lexicographic minimum, so no rotation is needed.
    return (
        len(a) == len(b)
        and bool(np.array_equal(a.xs, b.xs))
        and bool(np.array_equal(a.ys, b.ys))
    )


def _sorted_unique(s: PointSet) -> np.ndarray:
    """Indices of s in (x, y) order with coordinate duplicates removed."""
    order = np.lexsort((s.ys, s.xs))
    x = s.xs[order]
    y = s.ys[order]
    keep = np.ones(len(order), dtype=bool)
    keep[1:] = (x[1:] != x[:-1]) | (y[1:] != y[:-1])
    return order[keep].astype(np.int64)


def monotone_chain(s: PointSet) -> Hull:
    """Andrew's monotone chain, O(n log n)."""
    if s.n == 0:
        raise EmptySet("hull of an empty point set")
    order = _sorted_unique(s)
    idx = _backend.kernels().chain(s.xs, s.ys, order)
    return Hull(s.xs[idx], s.ys[idx])


def gift_wrapping(s: PointSet) -> Hull:
    """Jarvis march, O(nh). Slow; kept as an independent oracle for small sets."""
    if s.n == 0:
        raise EmptySet("hull of an empty point set")
    order = _sorted_unique(s)
    xs = s.xs[order].astype(np.float64)
    ys = s.ys[order].astype(np.float64)
    m = len(xs)
    hull = [0]
    p = 0
    while m > 1:
        px, py = xs[p], ys[p]
        q = (p + 1) % m
        while True:
            o = orientation_signs(px, py, xs[q], ys[q], xs, ys)
            right = np.flatnonzero(o < 0)
            if right.size == 0:
                break
            # Jump to the most clockwise candidate by a float estimate;
            # the exact test above decides when to stop.
            dx, dy = xs[right] - px, ys[right] - py
            turn = ((xs[q] - px) * dy - (ys[q] - py) * dx) / np.hypot(dx, dy)
            q = int(right[np.argmin(turn)])
        col = np.flatnonzero(o == 0)
        if xs[q] > px:
            col = col[xs[col] > px]
            q = int(col[np.argmax(xs[col])])
        elif xs[q] < px:
            col = col[xs[col] < px]
            q = int(col[np.argmin(xs[col])])
        elif ys[q] > py:
            col = col[(xs[col] == px) & (ys[col] > py)]
            q = int(col[np.argmax(ys[col])])
        else:
            col = col[(xs[col] == px) & (ys[col] < py)]
            q = int(col[np.argmin(ys[col])])
        if q == 0:
            break
        hull.append(q)
        p = q
        if len(hull) > m:
            raise RuntimeError("gift wrapping failed to close")
    sel = order[np.asarray(hull)]
    return Hull(s.xs[sel], s.ys[sel])


@dataclass
class FilterStats:
    n_input: int
    n_candidates: int
    strategy: CompactionStrategy
    durations: dict[str, float] = field(default_factory=dict)
    degenerate: bool = False

    @property
    def discarded_fraction(self) -> float:
        if self.n_input == 0:
            return 0.0
        return (self.n_input - self.n_candidates) / self.n_input

    @property
    def total_duration(self) -> float:
        return sum(self.durations.values())


def filtered_hull(
    s: PointSet,
    strategy: CompactionStrategy | str = CompactionStrategy.SEGMENTED_SCAN_SCATTER,
    *,
    threads: int | None = None,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    hull_algorithm=monotone_chain,
) -> tuple[Hull, FilterStats]:
    """Polygon, flags, compaction, hull; each stage timed.

    Degenerate inputs (fewer than three points, or collinear support
    vertices) skip the filter and hull the full set.
    """
    if s.n == 0:
        raise EmptySet("hull of an empty point set")
    strategy = CompactionStrategy.parse(strategy)
    clock = time.perf_counter
    durations = dict.fromkeys(STAGES, 0.0)

    t0 = clock()
    try:
        support = find_support_points(s, threads)
        oct = build_octagon(s, support)
    except DegeneratePolygon as exc:
        log.info("filter bypassed: %s", exc)
        oct = None
    t1 = clock()
    durations["polygon"] = t1 - t0

    if oct is None:
        candidates = s
    else:
        flags: FlagVector = flag_candidates(s, oct, threads)
        t2 = clock()
        durations["flagging"] = t2 - t1
        candidates = compact(s, flags, strategy, segment_size=segment_size, threads=threads)
        t1 = clock()
        durations["compaction"] = t1 - t2

    hull = hull_algorithm(candidates)
    durations["hull"] = clock() - t1
    stats = FilterStats(s.n, candidates.n, strategy, durations, degenerate=oct is None)
    return hull, stats
