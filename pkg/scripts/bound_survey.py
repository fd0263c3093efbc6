#!/usr/bin/env python3
"""Batch the inequality reports over the bundled fixture fields.

Produces one CSV row per (field, theorem) pair: the batch-export format of
the bound evaluators.
"""

import argparse
import csv
import sys

from zetaheights import (build_number_field, corollary_S_check,
                         disc_bound2_report, get_evaluator, lehmer_grh_report,
                         locate_zeros, northcott_report, parse_polynomial)
from zetaheights.table1 import ROWS

DEFAULT_FIELDS = [row[0] for row in ROWS if parse_polynomial(row[0]).degree <= 5]


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("polys", nargs="*", default=DEFAULT_FIELDS)
    parser.add_argument("--out", default="-")
    args = parser.parse_args()
    sink = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(["poly", "theorem", "lhs", "rhs_total", "margin", "slack"])
    for text in args.polys or DEFAULT_FIELDS:
        f = parse_polynomial(text)
        K = build_number_field(f)
        zl = locate_zeros(get_evaluator(K), 2.0)
        reports = [
            lehmer_grh_report(f, K, zl),
            northcott_report(K, zl),
            corollary_S_check(f, K, zl),
        ]
        if K.n_K >= 2:
            reports.append(disc_bound2_report(K, zl))
        for rep in reports:
            writer.writerow([text, rep.theorem_id, f"{rep.lhs:.10f}",
                             f"{rep.rhs_total:.10f}", f"{rep.margin:.10f}",
                             rep.asymptotic_slack])
    if sink is not sys.stdout:
        sink.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
