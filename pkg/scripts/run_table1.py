#!/usr/bin/env python3
"""Recompute the bundled reference table and print per-row diagnostics.

Equivalent to `zh verify-table1`; pass --stretch to include the degree-6
rows (several minutes each and a few hundred MB of coefficients).
"""

import argparse
import json
import sys

from zetaheights.table1 import verify_table1


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--stretch", action="store_true")
    parser.add_argument("--json", action="store_true", help="dump raw JSON")
    args = parser.parse_args()
    summary = verify_table1(include_stretch=args.stretch)
    if args.json:
        print(json.dumps(summary, indent=2, sort_keys=True))
    else:
        for row in summary["rows"]:
            mark = "PASS" if row["passed"] else "FAIL"
            print(f"{mark} {row['poly']:<16} logd_err={row['log_dK_error']:.2e} "
                  f"N={row['N_K_2']}/{row['N_K_2_printed']} "
                  f"col_err={row['column_error']:.2e} "
                  f"({row['seconds']:.1f}s)"
                  + (f"  [{row['known_discrepancy']}]"
                     if row["known_discrepancy"] else ""))
        print("gate:", "PASS" if summary["gate_passed"] else "FAIL")
    return 0 if summary["gate_passed"] else 2


if __name__ == "__main__":
    sys.exit(main())
