"""Zero structure and L1 distance of the parity-matched interpolants of J_m.

    python scripts/interpolant_report.py --k-max 5 --m-max 5
"""

import argparse

from reverse_bernstein.interpolation import residual_l1_report, verify_zero_structure


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--k-max", type=int, default=4)
    ap.add_argument("--m-max", type=int, default=4)
    args = ap.parse_args()
    print(f"{'k':>3} {'m':>3} {'zeros':>6} {'certified':>10} {'||J_m - p||_1':>16} {'D_km':>16} {'diff':>9}")
    for k in range(1, args.k_max + 1):
        for m in range(1, args.m_max + 1):
            zs = verify_zero_structure(k, m)
            l1 = residual_l1_report(k, m)
            print(
                f"{k:>3} {m:>3} {zs.n_zeros:>6} {str(zs.passed):>10} "
                f"{l1['residual_l1']:>16.12g} {l1['D_km']:>16.12g} {l1['discrepancy']:>9.1e}"
            )


if __name__ == "__main__":
    main()
