#!/usr/bin/env python3
"""Finite-scale upper density profiles for a few classic integer sets.

For each set, reports the density value along interval nets of growing
length, showing how the truncated value settles.

    python scripts/density_profile.py --window 5000 --nets 50,200,1000
"""

import argparse
import math

from finembed.carrier import ADDITIVE, GroundSet, make_window
from finembed.density import interval_net, upper_density


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--window", type=int, default=5000)
    ap.add_argument("--nets", default="50,200,1000",
                    help="interval net lengths, comma separated")
    args = ap.parse_args()

    win = make_window(ADDITIVE, args.window)
    sets = {
        "evens": GroundSet.from_predicate(win, lambda v: v % 2 == 0),
        "multiples of 3": GroundSet.from_predicate(win, lambda v: v % 3 == 0),
        "squares": GroundSet.from_predicate(
            win, lambda v: math.isqrt(v) ** 2 == v),
        "squarefree": GroundSet.from_predicate(
            win, lambda v: v > 0 and all(v % (p * p) for p in range(2, math.isqrt(v) + 1))),
    }
    lengths = [int(x) for x in args.nets.split(",")]

    header = " ".join(f"{f'net {n}':>14}" for n in lengths)
    print(f"{'set':<16} {header}")
    for label, ground in sets.items():
        cells = []
        for n in lengths:
            if n > args.window:
                cells.append(f"{'-':>14}")
                continue
            value = upper_density(ground, interval_net(n)).value
            cells.append(f"{str(value):>8} ~{float(value):.3f}")
        print(f"{label:<16} " + " ".join(cells))


if __name__ == "__main__":
    main()
