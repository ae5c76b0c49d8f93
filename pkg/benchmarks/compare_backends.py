"""Time each pipeline stage under the compiled and the pure-Python kernels.

    python3 benchmarks/compare_backends.py --n 1000000 --reps 5
"""

import argparse

from hullfilter import Distribution, DistributionSpec
from hullfilter.bench import compare_backends
from hullfilter.hull import STAGES


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=1_000_000)
    ap.add_argument("--reps", type=int, default=5)
    ap.add_argument("--p", type=float, default=0.1, help="displacement parameter")
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    spec = DistributionSpec(Distribution.DISPLACED, args.n, seed=1, p=args.p)
    rows = compare_backends(args.n, spec, args.reps, args.threads)
    cols = (*STAGES, "total")
    print(f"displaced circle, n={args.n}, p={args.p}, threads={args.threads}, "
          f"median of {args.reps} (seconds)")
    print(f"{'backend':<8}" + "".join(f"{c:>12}" for c in cols))
    for r in rows:
        print(f"{r['backend']:<8}" + "".join(f"{r[c]:>12.5f}" for c in cols))
    if len(rows) == 2:
        fast, slow = sorted(rows, key=lambda r: r["total"])
        print(f"{fast['backend']} is {slow['total'] / fast['total']:.1f}x faster end to end")


if __name__ == "__main__":
    main()
