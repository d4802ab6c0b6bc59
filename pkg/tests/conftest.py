"""Shared independent oracles for cross-checking the fast implementations.

Everything here is deliberately naive: plain loops over the raw definitions,
no reuse of the library's parameter derivations or detectors.
"""

from __future__ import annotations

import os

from hypothesis import settings

settings.register_profile("ci", settings(max_examples=200, deadline=None))
settings.register_profile("dev", settings(max_examples=60, deadline=None))
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "dev"))


def brute_longest_ap(values: set[int], bound: int) -> int:
    """Max AP length inside values, by walking every (start, stride) pair."""
    if not values:
        return 0
    best = 1
    for a in values:
        for d in range(1, bound + 1):
            length, x = 0, a
            while x <= bound and x in values:
                length += 1
                x += d
            if length > best:
                best = length
    return best


def brute_longest_gap_grid(values: set[int], bound: int) -> int:
    """Max one-based grid side k with r^i (a + j b) in values for all
    1 <= i, j <= k, by trying every (r, a, b, k) from scratch."""
    best = 0
    for r in range(2, bound + 1):
        top = bound // r
        for b in range(1, top + 1):
            for a in range(0, top - b + 1):
                k = 1
                while True:
                    ok = all(
                        r ** i * (a + j * b) <= bound
                        and r ** i * (a + j * b) in values
                        for i in range(1, k + 1) for j in range(1, k + 1))
                    if not ok:
                        break
                    best = max(best, k)
                    k += 1
    return best


def blind_translation_scan(f_vals, b_vals: set[int], bound: int,
                           additive: bool, window_bound: int):
    """First r <= bound with every f * r inside b_vals, by direct arithmetic."""
    lo = 0 if additive else 1
    for r in range(lo, bound + 1):
        ok = True
        for f in f_vals:
            y = f + r if additive else f * r
            if y > window_bound or y not in b_vals:
                ok = False
                break
        if ok:
            return (r,)
    return None


def blind_affine_scan(f_vals, b_vals: set[int], bound: int,
                      window_bound: int):
    """First (a, b) with a, b <= bound, b >= 1, mapping every f to b_vals."""
    for a in range(bound + 1):
        for b in range(1, bound + 1):
            ok = True
            for f in f_vals:
                y = a + b * f
                if y > window_bound or y not in b_vals:
                    ok = False
                    break
            if ok:
                return (a, b)
    return None


def brute_instances_ap(length: int, n: int) -> set[tuple[int, ...]]:
    out = set()
    for a in range(1, n + 1):
        for d in range(1, n + 1):
            vals = [a + i * d for i in range(length)]
            if vals[-1] <= n:
                out.add(tuple(vals))
    return out


def brute_instances_schur(n: int) -> set[tuple[int, ...]]:
    out = set()
    for x in range(1, n + 1):
        for y in range(1, n + 1):
            if x + y <= n:
                out.add(tuple(sorted({x, y, x + y})))
    return out


def brute_instances_equation(poly, n: int,
                             distinct: bool = False) -> set[tuple[int, ...]]:
    import itertools
    out = set()
    for tup in itertools.product(range(1, n + 1), repeat=poly.nvars):
        if poly.evaluate(tup) == 0:
            if distinct and len(set(tup)) != len(tup):
                continue
            out.add(tuple(sorted(set(tup))))
    return out


def count_shifted_intersection(a_set, window, fn, shift) -> int:
    """|A n (F_n . x)| by elementwise application of the window operation."""
    count = 0
    for v in fn:
        y = v if shift is None else window.op_payload(v, shift)
        if y is not None and a_set.contains_value(y):
            count += 1
    return count
