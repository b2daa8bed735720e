"""Benchmark the numba and numpy kernel backends against each other.

Runs the exhaustive minimum ad-rank sweep and the ideal-spin sweep on
dimension-15 algebras with both backends, checks that the results agree
bit for bit, and prints a timing table.

Usage: python3 benchmarks/bench_kernels.py [--heights 2,1,1] [--repeat 3]
"""

import argparse
import time

from hamlie import GF, AlgebraSpec, build_algebra, use_backend
from hamlie._kernels import (
    _numba_available,
    min_rank_sweep,
    pack_ad_tables,
    spin_sweep,
)


def time_backend(name, admats, brk, d, repeat):
    use_backend(name)
    if name == "numba":
        # warm-up so jit compilation is not timed
        min_rank_sweep(admats, d)
        spin_sweep(brk, d)
    results = {}
    timings = {}
    for label, fn, arg in (("min_rank_sweep", min_rank_sweep, admats),
                           ("spin_sweep", spin_sweep, brk)):
        best = float("inf")
        for _ in range(repeat):
            t0 = time.perf_counter()
            out = fn(arg, d)
            best = min(best, time.perf_counter() - t0)
        results[label] = out
        timings[label] = best
    use_backend(None)
    return results, timings


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--heights", default="2,1,1")
    ap.add_argument("--form", default="omega1")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    h = tuple(int(x) for x in args.heights.split(","))
    L = build_algebra(AlgebraSpec(h, args.form, GF(1), "P"))
    admats, brk, d = pack_ad_tables(L)
    print(f"algebra: {args.form} heights={h} dim={d}")

    backends = ["numpy"]
    if _numba_available():
        backends.insert(0, "numba")
    else:
        print("numba not installed; timing numpy only")

    all_results = {}
    all_timings = {}
    for name in backends:
        all_results[name], all_timings[name] = time_backend(
            name, admats, brk, d, args.repeat)

    if len(backends) == 2:
        assert all_results["numba"] == all_results["numpy"], \
            "backends disagree"
        print("backends agree bit for bit")

    print(f"{'kernel':<16}" + "".join(f"{b:>12}" for b in backends) +
          ("     speedup" if len(backends) == 2 else ""))
    for label in ("min_rank_sweep", "spin_sweep"):
        row = f"{label:<16}"
        for b in backends:
            row += f"{all_timings[b][label] * 1000:>10.1f}ms"
        if len(backends) == 2:
            row += f"{all_timings['numpy'][label] / all_timings['numba'][label]:>10.1f}x"
        print(row)


if __name__ == "__main__":
    main()
