#!/usr/bin/env python3
"""Scan critical-line zeros for one field and plot-friendly CSV output.

Example:
    python scripts/zero_scan.py "x^3+3*x+213" --height 2 --step 0.01
"""

import argparse
import sys

import numpy as np

from zetaheights import (build_number_field, get_evaluator, locate_zeros,
                         parse_polynomial, zero_statistics)
from zetaheights.config import RunConfig


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("poly")
    parser.add_argument("--height", type=float, default=2.0)
    parser.add_argument("--step", type=float, default=0.01)
    parser.add_argument("--dump-values", action="store_true",
                        help="print the scanned Z(t) grid as CSV")
    args = parser.parse_args()
    K = build_number_field(parse_polynomial(args.poly))
    ev = get_evaluator(K, RunConfig(scan_step=args.step))
    if args.dump_values:
        print("t,Z")
        for t in np.arange(0.0, args.height + args.step / 2, args.step):
            print(f"{t:.6f},{ev.hardy(float(t)):.12e}")
        return 0
    zl = locate_zeros(ev, args.height)
    stats = zero_statistics(zl, args.height)
    print(f"# {args.poly}: deg {K.n_K}, log|d_K| = {K.log_abs_disc:.6f}, "
          f"N({args.height}) = {stats.N}, lambda = {stats.lam:.10f}")
    print("t,bracket_width")
    for t, w in zip(zl.ordinates, zl.bracket_widths):
        print(f"{t:.12f},{w:.2e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
