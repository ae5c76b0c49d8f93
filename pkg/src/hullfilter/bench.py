"""Benchmark harness: timed, self-checking pipeline runs and CSV reports."""

from __future__ import annotations

import csv
import enum
import io
import os
import platform
import statistics
import time
from dataclasses import dataclass, field, replace

import numpy as np

from . import _backend
from .compaction import CompactionStrategy
from .datagen import Distribution, DistributionSpec, generate
from .errors import CorrectnessFailure, ResourceError
from .geometry import PointSet, Precision
from .hull import STAGES, filtered_hull, hull_equal, monotone_chain

__all__ = [
    "Baseline",
    "BenchConfig",
    "BenchReport",
    "run_bench",
    "emit_report_csv",
    "TABLE1_P",
    "run_table1",
    "compare_backends",
]

TABLE1_P = (0.0, 0.02, 0.04, 0.06, 0.08, 0.10)


class Baseline(enum.Enum):
    SEQUENTIAL_FILTER = "seqfilter"
    NO_FILTER = "nofilter"


@dataclass(frozen=True)
class BenchConfig:
    distribution: DistributionSpec
    strategy: CompactionStrategy = CompactionStrategy.SEGMENTED_SCAN_SCATTER
    repetitions: int = 5
    warmups: int = 2
    precision: Precision = Precision.F32
    baseline: Baseline = Baseline.NO_FILTER
    seeds: int = 1  # datasets seed, seed+1, ...; fractions are averaged
    threads: int | None = None

    def validate(self) -> None:
        if self.repetitions < 1:
            raise ValueError(f"repetitions must be >= 1, got {self.repetitions}")
        if self.warmups < 0:
            raise ValueError(f"warmups must be >= 0, got {self.warmups}")
        if self.seeds < 1:
            raise ValueError(f"seeds must be >= 1, got {self.seeds}")
        self.distribution.validate()


@dataclass
class BenchReport:
    config: BenchConfig
    stage_median: dict[str, float]
    stage_min: dict[str, float]
    total_median: float
    total_min: float
    baseline_median: float
    discarded_fraction: float
    hull_size: int
    environment: dict[str, object] = field(default_factory=dict)

    @property
    def speedup_vs_baseline(self) -> float:
        return self.baseline_median / self.total_median


def _environment(precision: Precision) -> dict[str, object]:
    return {
        "cores": os.cpu_count() or 1,
        "precision": precision.value,
        "backend": _backend.active_name(),
        "python": platform.python_version(),
        "numpy": np.__version__,
        "machine": platform.machine(),
    }


def _baseline_run(s: PointSet, baseline: Baseline, threads) -> float:
    t0 = time.perf_counter()
    if baseline is Baseline.NO_FILTER:
        monotone_chain(s)
    else:
        filtered_hull(s, CompactionStrategy.SEQUENTIAL, threads=1)
    return time.perf_counter() - t0


def run_bench(config: BenchConfig) -> BenchReport:
    """Warm up, time ``repetitions`` runs per dataset, check every hull.

    Raises :class:`CorrectnessFailure` (and produces no report) if any
    filtered hull differs from the unfiltered one.
    """
    config.validate()
    stage_samples = {k: [] for k in STAGES}
    totals: list[float] = []
    baseline_totals: list[float] = []
    fractions: list[float] = []
    hull_size = 0
    for k in range(config.seeds):
        spec = replace(config.distribution, seed=config.distribution.seed + k)
        try:
            s = generate(spec, config.precision, config.threads)
        except MemoryError as exc:
            raise ResourceError(f"cannot allocate {spec.n} points") from exc
        reference = monotone_chain(s)
        for _ in range(config.warmups):
            filtered_hull(s, config.strategy, threads=config.threads)
            _baseline_run(s, config.baseline, config.threads)
        for _ in range(config.repetitions):
            t0 = time.perf_counter()
            hull, stats = filtered_hull(s, config.strategy, threads=config.threads)
            totals.append(time.perf_counter() - t0)
            if not hull_equal(hull, reference):
                raise CorrectnessFailure(
                    f"filtered hull ({len(hull)} vertices) != unfiltered hull "
                    f"({len(reference)} vertices) for {spec}"
                )
            for stage in STAGES:
                stage_samples[stage].append(stats.durations[stage])
            baseline_totals.append(_baseline_run(s, config.baseline, config.threads))
        fractions.append(stats.discarded_fraction)
        hull_size = len(reference)
    return BenchReport(
        config=config,
        stage_median={k: statistics.median(v) for k, v in stage_samples.items()},
        stage_min={k: min(v) for k, v in stage_samples.items()},
        total_median=statistics.median(totals),
        total_min=min(totals),
        baseline_median=statistics.median(baseline_totals),
        discarded_fraction=statistics.fmean(fractions),
        hull_size=hull_size,
        environment=_environment(config.precision),
    )


CSV_COLUMNS = (
    "dist", "n", "seed", "seeds", "p", "precision", "strategy", "baseline",
    "backend", "threads", "cores", "repetitions", "warmups",
    "discarded_fraction", "hull_size",
    *(f"{s}_median_s" for s in STAGES), "total_median_s",
    *(f"{s}_min_s" for s in STAGES), "total_min_s",
    "baseline_median_s", "speedup",
)


def _row(r: BenchReport) -> list[str]:
    c = r.config
    d = c.distribution
    return [
        d.kind.value, str(d.n), str(d.seed), str(c.seeds), f"{d.p:g}",
        c.precision.value, c.strategy.value, c.baseline.value,
        str(r.environment.get("backend", "")),
        "auto" if c.threads is None else str(c.threads),
        str(r.environment.get("cores", "")), str(c.repetitions), str(c.warmups),
        f"{r.discarded_fraction:.4f}", str(r.hull_size),
        *(f"{r.stage_median[s]:.6f}" for s in STAGES), f"{r.total_median:.6f}",
        *(f"{r.stage_min[s]:.6f}" for s in STAGES), f"{r.total_min:.6f}",
        f"{r.baseline_median:.6f}", f"{r.speedup_vs_baseline:.3f}",
    ]


def emit_report_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in reports:
        w.writerow(_row(r))
    return buf.getvalue()


def run_table1(
    n: int,
    *,
    seeds: int = 5,
    seed: int = 0,
    strategy: CompactionStrategy = CompactionStrategy.SEGMENTED_SCAN_SCATTER,
    precision: Precision = Precision.F32,
    repetitions: int = 1,
    warmups: int = 0,
    baseline: Baseline = Baseline.NO_FILTER,
    threads: int | None = None,
    p_values=TABLE1_P,
) -> list[BenchReport]:
    """Displaced-circumference sweep over p, one report per p value."""
    out = []
    for p in p_values:
        spec = DistributionSpec(Distribution.DISPLACED, n, seed=seed, p=p)
        cfg = BenchConfig(spec, strategy, repetitions, warmups, precision, baseline, seeds, threads)
        out.append(run_bench(cfg))
    return out


def compare_backends(
    n: int = 1_000_000,
    spec: DistributionSpec | None = None,
    repetitions: int = 5,
    threads: int | None = 1,
) -> list[dict[str, object]]:
    """Median time per pipeline stage for every available kernel backend."""
    spec = spec or DistributionSpec(Distribution.DISPLACED, n, seed=1, p=0.1)
    s = generate(spec)
    rows = []
    for name in _backend.available():
        with _backend.use_backend(name):
            filtered_hull(s, threads=threads)
            samples = {k: [] for k in (*STAGES, "total")}
            for _ in range(repetitions):
                _, stats = filtered_hull(s, threads=threads)
                for k in STAGES:
                    samples[k].append(stats.durations[k])
                samples["total"].append(stats.total_duration)
        rows.append({"backend": name, "n": s.n,
                     **{k: statistics.median(v) for k, v in samples.items()}})
    return rows
