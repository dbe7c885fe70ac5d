"""Randomised verification over a grid of (k, m) cells, with a per-cell
summary of the smallest relative margin seen.

    python scripts/random_sweep.py --k-max 4 --m-max 3 --trials 1000 --jobs 4
"""

import argparse
import time

from reverse_bernstein.harness import sweep


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--k-max", type=int, default=4)
    ap.add_argument("--m-max", type=int, default=3)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--band", type=int, default=64)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    t0 = time.perf_counter()
    reps = sweep(args.k_max, args.m_max, args.trials, args.seed, args.band, jobs=args.jobs)
    print(f"{'k':>3} {'m':>3} {'trials':>7} {'fail':>5} {'min rel margin':>15} {'sat gap':>8}")
    for r in reps:
        print(f"{r.k:>3} {r.m:>3} {r.trials:>7} {r.failures:>5} {r.min_relative_margin:>15.4f} {r.saturation_gap:>8.1e}")
    print(f"{time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
