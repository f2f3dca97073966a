#!/usr/bin/env python3
"""Re-measure the built-in extremal instances and compare with their exact values.

Usage:
    python scripts/sharpness_experiment.py [--restarts N] [--seed S]
"""

import argparse
import math
import sys

from polarnorm.bounds import bound_complex_any, bound_complex_lp, bound_real_best
from polarnorm.extremals import nonattaining_bilinear, product_extremal, real44_form, verify_instance
from polarnorm.norms import OptimizerConfig


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--restarts", type=int, default=16)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    cfg = OptimizerConfig(restarts=args.restarts, seed=args.seed)

    instances = [
        product_extremal((2, 1), 1.0),
        product_extremal((1, 1, 1), 1.0),
        product_extremal((2, 2), 1.2),
        real44_form(),
        nonattaining_bilinear(9),
        nonattaining_bilinear(99),
    ]
    print(f"{'instance':<14} {'pattern':<10} {'p':>5} {'ratio':>12} {'exact':>12} {'poly':>12} {'ok':>4}")
    all_ok = True
    for inst in instances:
        report = verify_instance(inst, cfg)
        exact = inst.exact_ratio if inst.exact_ratio is not None else math.nan
        p_txt = "inf" if math.isinf(inst.space.p) else f"{inst.space.p:g}"
        print(
            f"{inst.name:<14} {str(tuple(inst.pattern.multiplicities)):<10} {p_txt:>5} "
            f"{report.ratio:>12.6f} {exact:>12.6f} {report.poly.value:>12.6f} "
            f"{'yes' if report.passed else 'NO':>4}"
        )
        all_ok &= report.passed

    print()
    print("reference constants:")
    print(f"  complex (2,1) at p=1 : {bound_complex_lp((2, 1), 1.0).value:.6f} (sharp)")
    print(f"  complex (2,2) any    : {bound_complex_any((2, 2)).value:.6f}")
    best22 = bound_real_best((2, 2))
    print(f"  real (2,2) best      : {best22.value:.6f} (exact registry: {best22.exact})")
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
