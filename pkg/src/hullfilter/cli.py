"""Command-line entry point: ``hullfilter {generate,filter,hull,bench,table1}``.

Data goes to files or stdout; diagnostics go to stderr.  Exit status is 0 on
success and nonzero on any error.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys

from . import _backend
from .bench import Baseline, BenchConfig, emit_report_csv, run_bench, run_table1
from .compaction import CompactionStrategy, compact
from .datagen import Distribution, DistributionSpec, generate
from .errors import HullFilterError
from .filter import candidate_flags
from .geometry import Precision
from .hull import filtered_hull, monotone_chain
from .io import load, save, write_csv

log = logging.getLogger("hullfilter")

_STRATEGIES = [s.value for s in CompactionStrategy]


def _add_dist_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--dist", required=True, choices=[d.value for d in Distribution])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--p", type=float, default=0.0, help="displacement parameter")
    p.add_argument("--mu", type=float, default=0.5)
    p.add_argument("--sigma", type=float, default=math.sqrt(0.1), help="standard deviation")
    p.add_argument("--r", type=float, default=0.25, help="circle radius")
    p.add_argument("--displacement", choices=["probabilistic", "band"], default="probabilistic")
    p.add_argument("--precision", choices=["f32", "f64"], default="f32")


def _spec(args) -> DistributionSpec:
    return DistributionSpec(
        Distribution(args.dist), args.n, seed=args.seed, mu=args.mu,
        sigma=args.sigma, r=args.r, p=args.p, displacement=args.displacement,
    )


def _threads(p: argparse.ArgumentParser) -> None:
    p.add_argument("--threads", type=int, default=None, help="worker threads (default: all cores)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hullfilter", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    parser.add_argument("--backend", choices=_backend.available(), default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a seeded point set")
    _add_dist_args(g)
    g.add_argument("--out", required=True, help=".csv for CSV, anything else for PTS2")
    _threads(g)

    f = sub.add_parser("filter", help="drop points strictly inside the support polygon")
    f.add_argument("--in", dest="inp", required=True)
    f.add_argument("--strategy", choices=_STRATEGIES, default="segscan")
    f.add_argument("--out", default=None, help="survivor file (default: CSV on stdout)")
    f.add_argument("--stats", action="store_true", help="print filter statistics as JSON to stderr")
    _threads(f)

    h = sub.add_parser("hull", help="compute the strict convex hull")
    h.add_argument("--in", dest="inp", required=True)
    h.add_argument("--out", required=True)
    h.add_argument("--no-filter", action="store_true")
    h.add_argument("--strategy", choices=_STRATEGIES, default="segscan")
    _threads(h)

    b = sub.add_parser("bench", help="time the filtered pipeline against a baseline")
    _add_dist_args(b)
    b.add_argument("--strategy", choices=_STRATEGIES, default="segscan")
    b.add_argument("--reps", type=int, default=5)
    b.add_argument("--warmups", type=int, default=2)
    b.add_argument("--seeds", type=int, default=1)
    b.add_argument("--baseline", choices=[x.value for x in Baseline], default="nofilter")
    b.add_argument("--csv", default=None, help="report file (default: stdout)")
    _threads(b)

    t = sub.add_parser("table1", help="discarded-percentage sweep over p for a displaced circle")
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--seeds", type=int, default=5)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--strategy", choices=_STRATEGIES, default="segscan")
    t.add_argument("--reps", type=int, default=1)
    t.add_argument("--warmups", type=int, default=0)
    t.add_argument("--baseline", choices=[x.value for x in Baseline], default="nofilter")
    t.add_argument("--precision", choices=["f32", "f64"], default="f32")
    t.add_argument("--csv", default=None, help="report file (default: stdout)")
    _threads(t)
    return parser


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def _cmd_generate(args) -> None:
    s = generate(_spec(args), Precision(args.precision), args.threads)
    save(args.out, s)
    log.info("wrote %d points to %s", s.n, args.out)


def _cmd_filter(args) -> None:
    s = load(args.inp)
    flags, oct = candidate_flags(s, args.threads)
    out = compact(s, flags, args.strategy, threads=args.threads)
    if args.out is None:
        write_csv(sys.stdout, out)
    else:
        save(args.out, out)
    if args.stats:
        stats = {
            "n_input": s.n,
            "n_candidates": out.n,
            "discarded_fraction": round((s.n - out.n) / s.n, 6) if s.n else 0.0,
            "polygon_vertices": 0 if oct is None else len(oct),
            "strategy": args.strategy,
        }
        print(json.dumps(stats), file=sys.stderr)


def _cmd_hull(args) -> None:
    s = load(args.inp)
    if args.no_filter:
        hull = monotone_chain(s)
    else:
        hull, stats = filtered_hull(s, args.strategy, threads=args.threads)
        log.info("discarded %.4f of %d points", stats.discarded_fraction, s.n)
    save(args.out, hull.as_pointset())
    log.info("hull has %d vertices", len(hull))


def _cmd_bench(args) -> None:
    cfg = BenchConfig(
        _spec(args), CompactionStrategy(args.strategy), args.reps, args.warmups,
        Precision(args.precision), Baseline(args.baseline), args.seeds, args.threads,
    )
    _emit(emit_report_csv([run_bench(cfg)]), args.csv)


def _cmd_table1(args) -> None:
    reports = run_table1(
        args.n, seeds=args.seeds, seed=args.seed,
        strategy=CompactionStrategy(args.strategy), precision=Precision(args.precision),
        repetitions=args.reps, warmups=args.warmups, baseline=Baseline(args.baseline),
        threads=args.threads,
    )
    for r in reports:
        log.info("p=%.2f discarded=%.2f%% speedup=%.2f", r.config.distribution.p,
                 100 * r.discarded_fraction, r.speedup_vs_baseline)
    _emit(emit_report_csv(reports), args.csv)


_COMMANDS = {
    "generate": _cmd_generate,
    "filter": _cmd_filter,
    "hull": _cmd_hull,
    "bench": _cmd_bench,
    "table1": _cmd_table1,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        if args.backend:
            with _backend.use_backend(args.backend):
                _COMMANDS[args.command](args)
        else:
            _COMMANDS[args.command](args)
    except (HullFilterError, OSError, ValueError) as exc:
        print(f"hullfilter: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
