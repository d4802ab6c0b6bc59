#!/usr/bin/env python3
"""Two-coloring experiment for the Pythagorean equation x^2 + y^2 = z^2.

Searches avoiding 2-colorings of [1..N] for growing N and reports the search
effort.  Desk scale only: the search stays in the easily-avoiding regime,
far below the known forcing threshold.

    python scripts/pythagorean_search.py --start 20 --stop 100 --step 20
"""

import argparse
import time

from finembed.prsearch import (equation_pattern, find_avoiding_coloring,
                               parse_polynomial, verify_coloring)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--start", type=int, default=20)
    ap.add_argument("--stop", type=int, default=100)
    ap.add_argument("--step", type=int, default=20)
    ap.add_argument("--colors", type=int, default=2)
    args = ap.parse_args()

    poly = parse_polynomial("x^2+y^2-z^2")
    print(f"{'N':>5} {'instances':>10} {'outcome':>10} {'nodes':>8} "
          f"{'verified':>9} {'time':>8}")
    for n in range(args.start, args.stop + 1, args.step):
        pattern = equation_pattern(poly)
        t0 = time.perf_counter()
        insts = pattern.instances(n)
        cert = find_avoiding_coloring(n, args.colors, pattern)
        dt = time.perf_counter() - t0
        ok = verify_coloring(cert, pattern) if cert.outcome == "avoiding" else "-"
        print(f"{n:>5} {len(insts):>10} {cert.outcome:>10} {cert.nodes:>8} "
              f"{ok!s:>9} {dt:>7.2f}s")


if __name__ == "__main__":
    main()
