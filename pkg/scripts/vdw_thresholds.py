#!/usr/bin/env python3
"""Desk-scale threshold table: least N forcing a monochromatic pattern.

Recomputes the small van der Waerden / Schur facts by exhaustive search and
prints a table, e.g.

    python scripts/vdw_thresholds.py --nmax 40
"""

import argparse
import time

from finembed.prsearch import ap_pattern, ramsey_threshold, schur_pattern


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=40,
                    help="give up beyond this N")
    ap.add_argument("--max-ap", type=int, default=4,
                    help="longest AP pattern to try")
    args = ap.parse_args()

    rows = [("schur", 2, schur_pattern())]
    for length in range(3, args.max_ap + 1):
        rows.append((f"ap:{length}", 2, ap_pattern(length)))
    rows.append(("ap:3", 3, ap_pattern(3)))

    print(f"{'pattern':<10} {'colors':>6} {'threshold':>10} {'time':>8}")
    for label, colors, pattern in rows:
        t0 = time.perf_counter()
        res = ramsey_threshold(pattern, colors, args.nmax)
        dt = time.perf_counter() - t0
        shown = res.threshold if res.threshold is not None else f">{args.nmax}"
        print(f"{label:<10} {colors:>6} {shown!s:>10} {dt:>7.2f}s")


if __name__ == "__main__":
    main()
