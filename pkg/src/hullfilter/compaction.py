"""Order-preserving stream compaction of flagged points.

Five interchangeable strategies compute the same function: keep the points
whose flag is 1, in their original order.

* ``SCAN_SCATTER``: flat exclusive scan of the flags, then scatter.
* ``SEGMENTED_SCAN_SCATTER``: per-segment scans plus a scan of the segment
  totals; each survivor lands at ``local[i] + global[i // segment_size]``.
* ``PREDICATE_COPY``: stable copy driven by a predicate on the flag.
* ``FLAGGED_SELECT``: select the flagged indices, gather, report the count.
* ``SEQUENTIAL``: one running-counter loop; the reference.

Atomic-counter compaction is deliberately absent: it does not preserve order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import _backend
from ._parallel import chunk_ranges, map_ranges, resolve_threads
from .errors import EmptySet, InvalidSegmentSize
from .filter import FlagVector
from .geometry import PointSet

__all__ = [
    "CompactionStrategy",
    "OffsetVector",
    "SegmentedOffsets",
    "DEFAULT_SEGMENT_SIZE",
    "exclusive_scan",
    "segmented_scan",
    "compact_scan_scatter",
    "compact_copy_if",
    "compact_flagged",
    "compact_sequential",
    "compact",
]

DEFAULT_SEGMENT_SIZE = 256


class CompactionStrategy(enum.Enum):
    SCAN_SCATTER = "scan"
    SEGMENTED_SCAN_SCATTER = "segscan"
    PREDICATE_COPY = "copyif"
    FLAGGED_SELECT = "flagged"
    SEQUENTIAL = "seq"

    @classmethod
    def parse(cls, value: "str | CompactionStrategy") -> "CompactionStrategy":
        if isinstance(value, cls):
            return value
        try:
            return cls(value)
        except ValueError:
            return cls[str(value).upper()]


@dataclass(frozen=True, eq=False)
class OffsetVector:
    offsets: np.ndarray
    total: int

    @property
    def n(self) -> int:
        return len(self.offsets)


@dataclass(frozen=True, eq=False)
class SegmentedOffsets:
    segment_size: int
    segment_offsets: np.ndarray  # exclusive scan restarted at every segment
    segment_totals: np.ndarray
    global_offsets: np.ndarray  # exclusive scan of segment_totals

    def recombine(self) -> np.ndarray:
        seg_of = np.arange(len(self.segment_offsets)) // self.segment_size
        return self.segment_offsets + self.global_offsets[seg_of]

    @property
    def total(self) -> int:
        return int(self.segment_totals.sum())


def _check_sizes(s: PointSet, flags: FlagVector) -> None:
    if flags.n != s.n:
        raise ValueError(f"{flags.n} flags for {s.n} points")


def _alloc(s: PointSet, m: int) -> tuple[np.ndarray, np.ndarray]:
    return np.empty(m, dtype=s.xs.dtype), np.empty(m, dtype=s.xs.dtype)


def exclusive_scan(flags: FlagVector) -> OffsetVector:
    if flags.n == 0:
        raise EmptySet("exclusive scan of an empty flag vector")
    out = np.empty(flags.n, dtype=np.int64)
    total = _backend.kernels().exclusive_scan(flags.bits, out)
    out.flags.writeable = False
    return OffsetVector(out, int(total))


def segmented_scan(
    flags: FlagVector, segment_size: int = DEFAULT_SEGMENT_SIZE
) -> SegmentedOffsets:
    if segment_size < 1:
        raise InvalidSegmentSize(f"segment size must be >= 1, got {segment_size}")
    n = flags.n
    nseg = -(-n // segment_size)
    local = np.empty(n, dtype=np.int64)
    totals = np.empty(nseg, dtype=np.int64)
    _backend.kernels().segmented_scan(flags.bits, segment_size, local, totals)
    glob = np.zeros(nseg, dtype=np.int64)
    if nseg > 1:
        np.cumsum(totals[:-1], out=glob[1:])
    return SegmentedOffsets(segment_size, local, totals, glob)


def compact_scan_scatter(
    s: PointSet,
    flags: FlagVector,
    mode: str = "flat",
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int | None = None,
) -> PointSet:
    _check_sizes(s, flags)
    if s.n == 0:
        return PointSet.empty(s.precision)
    k = _backend.kernels()
    t = resolve_threads(threads, s.n)
    if mode == "flat":
        scan = exclusive_scan(flags)
        outx, outy = _alloc(s, scan.total)
        fn = lambda a, b: k.scatter(s.xs, s.ys, flags.bits, scan.offsets, outx, outy, a, b)
    elif mode == "segmented":
        seg = segmented_scan(flags, segment_size)
        outx, outy = _alloc(s, seg.total)
        fn = lambda a, b: k.scatter_segmented(
            s.xs, s.ys, flags.bits, seg.segment_offsets, seg.global_offsets,
            seg.segment_size, outx, outy, a, b,
        )
    else:
        raise ValueError(f"mode must be 'flat' or 'segmented', got {mode!r}")
    map_ranges(fn, chunk_ranges(s.n, t), t)
    return PointSet._trusted(outx, outy)


def compact_copy_if(
    s: PointSet, flags: FlagVector, threads: int | None = None
) -> PointSet:
    _check_sizes(s, flags)
    if s.n == 0:
        return PointSet.empty(s.precision)
    k = _backend.kernels()
    t = resolve_threads(threads, s.n)
    ranges = chunk_ranges(s.n, t)
    counts = map_ranges(lambda a, b: k.count_range(flags.bits, a, b), ranges, t)
    starts = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)
    outx, outy = _alloc(s, int(starts[-1]))
    dst = {a: int(d) for (a, _), d in zip(ranges, starts[:-1])}
    map_ranges(
        lambda a, b: k.copy_if_range(s.xs, s.ys, flags.bits, a, b, outx, outy, dst[a]),
        ranges,
        t,
    )
    return PointSet._trusted(outx, outy)


def compact_flagged(s: PointSet, flags: FlagVector) -> tuple[PointSet, int]:
    """Compaction that also returns the number of selected points."""
    _check_sizes(s, flags)
    if s.n == 0:
        return PointSet.empty(s.precision), 0
    idx = np.empty(s.n, dtype=np.int64)
    count = int(_backend.kernels().select_flagged(flags.bits, idx))
    return s.take(idx[:count]), count


def compact_sequential(s: PointSet, flags: FlagVector) -> PointSet:
    _check_sizes(s, flags)
    outx, outy = _alloc(s, s.n)
    c = int(_backend.kernels().compact_sequential(s.xs, s.ys, flags.bits, outx, outy))
    return PointSet._trusted(outx[:c].copy(), outy[:c].copy())


def compact(
    s: PointSet,
    flags: FlagVector,
    strategy: CompactionStrategy | str = CompactionStrategy.SEGMENTED_SCAN_SCATTER,
    *,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int | None = None,
) -> PointSet:
    strategy = CompactionStrategy.parse(strategy)
    if strategy is CompactionStrategy.SCAN_SCATTER:
        return compact_scan_scatter(s, flags, "flat", threads=threads)
    if strategy is CompactionStrategy.SEGMENTED_SCAN_SCATTER:
        return compact_scan_scatter(s, flags, "segmented", segment_size, threads)
    if strategy is CompactionStrategy.PREDICATE_COPY:
        return compact_copy_if(s, flags, threads)
    if strategy is CompactionStrategy.FLAGGED_SELECT:
        return compact_flagged(s, flags)[0]
    return compact_sequential(s, flags)
