"""How close band-limited versions of the extremal function come to equality.

Plain truncation keeps a Gibbs overshoot in f^(m), so its margin stalls;
Fejer means converge to the sharp constant. Writes a CSV to stdout.

    python scripts/saturation_study.py --k 1 --m 2 > saturation.csv
"""

import argparse
import csv
import sys

from reverse_bernstein.harness import saturation_test, spectral_saturation_margin


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--k", type=int, default=1)
    ap.add_argument("--m", type=int, default=2)
    ap.add_argument("--bands", type=int, nargs="+", default=[16, 32, 64, 128, 256, 512, 1024])
    args = ap.parse_args()
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["k", "m", "band", "fejer_margin", "truncation_margin", "exact_gap"])
    gap = saturation_test(args.k, args.m)
    for band in args.bands:
        band = max(band, args.k)
        fej = spectral_saturation_margin(args.k, args.m, band, "fejer")
        cut = spectral_saturation_margin(args.k, args.m, band, "none")
        w.writerow([args.k, args.m, band, f"{fej:.6e}", f"{cut:.6e}", gap])


if __name__ == "__main__":
    main()
