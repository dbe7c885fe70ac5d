"""Print B_m, the up/down numbers and the sharp constants, and cross-check
each D_{k,m} against the sup-norm of the extremal function.

    python scripts/constants_table.py --k-max 4 --m-max 10
"""

import argparse

from reverse_bernstein.constants import C, cross_validate


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--k-max", type=int, default=3)
    ap.add_argument("--m-max", type=int, default=8)
    args = ap.parse_args()
    print(f"{'k':>3} {'m':>3} {'B_m':>22} {'m! B_m':>12} {'C_km':>14} {'D_km':>14}  cross-check")
    for k in range(1, args.k_max + 1):
        for m in range(1, args.m_max + 1):
            rec = C(k, m)
            cv = cross_validate(k, m)
            tag = "exact" if cv.exact_agreement else f"rel {cv.rel_error:.1e}"
            print(f"{k:>3} {m:>3} {str(rec.B_m):>22} {rec.euler_number:>12} {rec.C_km:>14.8g} {rec.D_km:>14.8g}  {tag}")


if __name__ == "__main__":
    main()
