"""Chunked execution of GIL-releasing kernels on a thread pool."""

from __future__ import annotations

import os
import threading
from concurrent.futures import ThreadPoolExecutor

# Below this size the pool costs more than it saves.
MIN_PARALLEL = 1 << 15

_pools: dict[int, ThreadPoolExecutor] = {}
_lock = threading.Lock()


def max_threads() -> int:
    return os.cpu_count() or 1


def resolve_threads(threads: int | None, n: int) -> int:
    if threads is None:
        threads = max_threads() if n >= MIN_PARALLEL else 1
    if threads < 1:
        raise ValueError(f"threads must be >= 1, got {threads}")
    return max(1, min(threads, n)) if n else 1


def chunk_ranges(n: int, parts: int) -> list[tuple[int, int]]:
    """Split [0, n) into ``parts`` contiguous, nearly equal ranges."""
    parts = max(1, min(parts, n)) if n else 1
    base, extra = divmod(n, parts)
    out = []
    start = 0
    for k in range(parts):
        stop = start + base + (1 if k < extra else 0)
        out.append((start, stop))
        start = stop
    return out


def _pool(threads: int) -> ThreadPoolExecutor:
    with _lock:
        pool = _pools.get(threads)
        if pool is None:
            pool = ThreadPoolExecutor(max_workers=threads, thread_name_prefix="hullfilter")
            _pools[threads] = pool
        return pool


def map_ranges(fn, ranges, threads: int) -> list:
    """Call ``fn(start, stop)`` for each range; results come back in range order."""
    if threads <= 1 or len(ranges) <= 1:
        return [fn(a, b) for a, b in ranges]
    return list(_pool(threads).map(lambda r: fn(*r), ranges))
