#!/usr/bin/env python3
"""Print the m-th-root growth of the mixed-argument constants along equal-block
families, in the log domain so large degrees never overflow.

Usage:
    python scripts/growth_table.py [--n 2] [--m-max 200] [--step 20]
"""

import argparse
import sys

from polarnorm.bounds import asymptotic_scan, equal_split_family


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=2, help="number of equal blocks")
    ap.add_argument("--m-max", type=int, default=200, dest="m_max")
    ap.add_argument("--step", type=int, default=20)
    args = ap.parse_args()

    family = equal_split_family(args.n)
    step = max(args.n, args.step - args.step % args.n)
    ms = list(range(step, args.m_max + 1, step))
    complex_rows = asymptotic_scan(family, ms, "complex")
    real_rows = asymptotic_scan(family, ms, "real")

    print(f"{'m':>6} {'complex bound^(1/m)':>20} {'real bound^(1/m)':>18}")
    for (m, _, c_root), (_, _, r_root) in zip(complex_rows, real_rows):
        print(f"{m:>6} {c_root:>20.6f} {r_root:>18.6f}")
    print()
    print("complex roots approach 1; real roots approach 2.")
    return 0


if __name__ == "__main__":
    sys.exit(main())
