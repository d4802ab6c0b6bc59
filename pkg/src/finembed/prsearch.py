"""Partition-regularity engine: complete backtracking searches for
pattern-avoiding colorings, Ramsey-style thresholds, strong-PR probes on
explicit sets, and experiments with homogeneous diophantine equations.

A pattern is a finite matcher: it enumerates every instance (a set of
integers that must not end up monochromatic) inside [1..N].  Searches are
complete backtracking with color-relabeling symmetry breaking (a fresh color
index may only be introduced after all smaller ones), so "forced" outcomes
are exhaustion proofs and avoiding colorings come out canonical and
lexicographically least.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .errors import BudgetError, InputError

DEFAULT_INSTANCE_BUDGET = 500_000
DEFAULT_NODE_BUDGET = 2_000_000

VARS = "xyzw"


# -- polynomials ---------------------------------------------------------------

@dataclass(frozen=True)
class Polynomial:
    """Integer-coefficient polynomial in up to four variables x, y, z, w."""

    monomials: tuple[tuple[int, tuple[int, ...]], ...]
    nvars: int

    def evaluate(self, values: Sequence[int]) -> int:
        if len(values) != self.nvars:
            raise InputError(f"expected {self.nvars} values")
        total = 0
        for coeff, exps in self.monomials:
            term = coeff
            for v, e in zip(values, exps):
                term *= v ** e
            total += term
        return total

    @property
    def monomial_degrees(self) -> tuple[int, ...]:
        return tuple(sum(exps) for _, exps in self.monomials)

    @property
    def degree(self) -> int:
        return max(self.monomial_degrees, default=0)

    @property
    def is_homogeneous(self) -> bool:
        return len(set(self.monomial_degrees)) <= 1

    def __str__(self) -> str:
        parts = []
        for coeff, exps in sorted(self.monomials, key=lambda m: m[1],
                                  reverse=True):
            body = "*".join(
                f"{VARS[i]}^{e}" if e > 1 else VARS[i]
                for i, e in enumerate(exps) if e)
            mag = abs(coeff)
            head = "" if (mag == 1 and body) else str(mag)
            stars = "*" if head and body else ""
            parts.append(("-" if coeff < 0 else "+") + head + stars + body)
        text = "".join(parts) or "0"
        return text.lstrip("+")


_MONO = re.compile(r"^(\d+)?((?:\*?[xyzw](?:\^\d+)?)*)$")
_FACTOR = re.compile(r"([xyzw])(?:\^(\d+))?")


def parse_polynomial(text: str) -> Polynomial:
    """Parse monomials in x, y, z, w joined by + and -, e.g. x^2+y^2-z^2."""
    clean = text.replace(" ", "").replace("−", "-")
    if not clean:
        raise InputError("empty polynomial")
    if clean[0] not in "+-":
        clean = "+" + clean
    chunks = re.findall(r"[+-][^+-]+", clean)
    if "".join(chunks) != clean:
        raise InputError(f"cannot parse polynomial {text!r}")
    terms: dict[tuple[int, ...], int] = {}
    used = 0
    for chunk in chunks:
        sign = -1 if chunk[0] == "-" else 1
        m = _MONO.match(chunk[1:])
        if not m or not chunk[1:]:
            raise InputError(f"cannot parse monomial {chunk!r}")
        coeff = sign * int(m.group(1) or 1)
        exps = [0, 0, 0, 0]
        for var, power in _FACTOR.findall(m.group(2) or ""):
            idx = VARS.index(var)
            exps[idx] += int(power or 1)
            used = max(used, idx + 1)
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + coeff
    nvars = max(used, 1)
    monos = tuple(sorted(
        (c, exps[:nvars]) for exps, c in terms.items() if c != 0))
    return Polynomial(monos, nvars)


@dataclass(frozen=True)
class HomogeneityReport:
    homogeneous: bool
    monomial_degrees: tuple[int, ...]
    degree: int


def homogeneity_report(poly: Polynomial) -> HomogeneityReport:
    degs = tuple(sorted(set(poly.monomial_degrees)))
    return HomogeneityReport(poly.is_homogeneous, degs, poly.degree)


# -- patterns ------------------------------------------------------------------

@dataclass(frozen=True)
class Pattern:
    """A named instance matcher over initial segments [1..N]."""

    label: str
    _enumerate: Callable[[int], list[tuple[int, ...]]]

    def instances(self, n: int,
                  budget: int = DEFAULT_INSTANCE_BUDGET) -> list[tuple[int, ...]]:
        """All instances inside [1..n], as sorted tuples of distinct values,
        deduplicated and in lexicographic order."""
        out = self._enumerate(n)
        if len(out) > budget:
            raise BudgetError(
                f"pattern-instance-overflow: {len(out)} instances for "
                f"{self.label} at N={n}")
        return sorted(set(out))


def ap_pattern(length: int) -> Pattern:
    """Arithmetic progressions of the given length, stride >= 1 (the
    degenerate stride-0 progression is excluded)."""
    if length < 2:
        raise InputError("AP pattern needs length >= 2")

    def enum(n: int) -> list[tuple[int, ...]]:
        out = []
        for d in range(1, n // (length - 1) + 1):
            for a in range(1, n - (length - 1) * d + 1):
                out.append(tuple(a + i * d for i in range(length)))
        return out

    return Pattern(f"ap:{length}", enum)


def schur_pattern() -> Pattern:
    """Triples {x, y, x+y}; x equal to y allowed."""

    def enum(n: int) -> list[tuple[int, ...]]:
        out = []
        for x in range(1, n + 1):
            for y in range(x, n - x + 1):
                out.append(tuple(sorted({x, y, x + y})))
        return out

    return Pattern("schur", enum)


def gap_grid_pattern(n_index: int, strict: bool = False) -> Pattern:
    """Zero-based geoarithmetic grids b q^j (a + i d), 0 <= i, j <= n_index,
    with q > 1 and d > 0 so the grid is never a single repeated point.

    strict additionally requires q and d themselves in the same cell, the
    stronger form of the grid partition statement.
    """
    if n_index < 1:
        raise InputError("grid index bound must be >= 1 (0 is a single cell)")

    def enum(n: int) -> list[tuple[int, ...]]:
        out = []
        qtop = n_index  # exponent of the largest power-of-q cell
        for q in range(2, n + 1):
            if q ** qtop > n:
                break
            for b in range(1, n + 1):
                if b * q ** qtop > n:  # the (0, qtop) cell needs a >= 1
                    break
                for d in range(1, n + 1):
                    if b * q ** qtop * n_index * d > n:  # (qtop, qtop) cell
                        break
                    for a in range(0, n + 1):
                        cells = [b * q ** j * (a + i * d)
                                 for i in range(n_index + 1)
                                 for j in range(n_index + 1)]
                        if max(cells) > n:
                            break
                        if min(cells) < 1:
                            continue
                        inst = set(cells)
                        if strict:
                            inst |= {q, d}
                        out.append(tuple(sorted(inst)))
        return out

    label = f"gap-grid:{n_index}" + (":strict" if strict else "")
    return Pattern(label, enum)


def poly_progression_pattern(length: int, degree: int,
                             coeff_pred: Callable[[int], bool] | None,
                             d_indices: Sequence[int]) -> Pattern:
    """Runs P(1), ..., P(length) of restricted-coefficient polynomials."""
    if length < 2:
        raise InputError("progression length must be >= 2")
    dset = sorted(set(d_indices))
    if not dset:
        raise InputError("empty-D")
    if dset[0] < 0 or dset[-1] > degree:
        raise InputError(f"inconsistent-degree: D={dset} vs degree {degree}")
    pred = coeff_pred or (lambda v: True)
    nonconstant = dset[-1] >= 1

    def enum(n: int) -> list[tuple[int, ...]]:
        out: list[tuple[int, ...]] = []

        def rec(pos: int, budget: int, chosen: list[int]) -> None:
            if pos == len(dset):
                if nonconstant and all(
                        c == 0 for i, c in zip(dset, chosen) if i >= 1):
                    return
                vals = []
                for x in range(1, length + 1):
                    y = sum(c * x ** i for i, c in zip(dset, chosen))
                    if not 1 <= y <= n:
                        return
                    vals.append(y)
                out.append(tuple(sorted(set(vals))))
                return
            for v in range(budget + 1):
                if pred(v):
                    chosen.append(v)
                    rec(pos + 1, budget - v, chosen)
                    chosen.pop()

        rec(0, n, [])  # P(1) = sum of coefficients must land in [1..n]
        return out

    return Pattern(f"poly:{length}:{degree}:{','.join(map(str, dset))}", enum)


def equation_pattern(poly: Polynomial, distinct: bool = False) -> Pattern:
    """Solution sets of P(a_1, ..., a_v) = 0 with entries in [1..N].

    Variables may repeat values unless distinct is set; zero never occurs
    because the search range starts at 1.
    """
    if poly.nvars < 1:
        raise InputError("zero-variables: the equation needs a variable")

    def enum(n: int) -> list[tuple[int, ...]]:
        out = []
        for sol in _solutions(poly, range(1, n + 1)):
            if distinct and len(set(sol)) != len(sol):
                continue
            out.append(tuple(sorted(set(sol))))
        return out

    label = f"equation:{poly}" + (":distinct" if distinct else "")
    return Pattern(label, enum)


def _solutions(poly: Polynomial, domain: Sequence[int]) -> Iterable[tuple[int, ...]]:
    vals = list(domain)
    v = poly.nvars

    def rec(prefix: list[int]) -> Iterable[tuple[int, ...]]:
        if len(prefix) == v:
            if poly.evaluate(prefix) == 0:
                yield tuple(prefix)
            return
        for x in vals:
            prefix.append(x)
            yield from rec(prefix)
            prefix.pop()

    yield from rec([])


def parse_pattern(spec: str) -> Pattern:
    """CLI pattern syntax: ap:<l>, schur, gap-grid:<n>[:strict],
    poly:<l>:<d>:<D-comma-list>."""
    parts = spec.split(":")
    head = parts[0]
    if head == "ap" and len(parts) == 2:
        return ap_pattern(int(parts[1]))
    if head == "schur" and len(parts) == 1:
        return schur_pattern()
    if head == "gap-grid" and len(parts) in (2, 3):
        strict = len(parts) == 3 and parts[2] == "strict"
        if len(parts) == 3 and not strict:
            raise InputError(f"unknown pattern flag {parts[2]!r}")
        return gap_grid_pattern(int(parts[1]), strict)
    if head == "poly" and len(parts) == 4:
        d_indices = [int(x) for x in parts[3].split(",")]
        return poly_progression_pattern(int(parts[1]), int(parts[2]),
                                        None, d_indices)
    raise InputError(f"unknown pattern {spec!r}")


# -- coloring search -----------------------------------------------------------

@dataclass(frozen=True)
class ColoringCertificate:
    """Either an explicit pattern-avoiding coloring or an exhaustion record."""

    outcome: str  # avoiding | forced
    elements: tuple[int, ...]
    colors: tuple[int, ...] | None
    nodes: int
    exhaustive: bool
    pattern: str
    n: int
    r: int

    def color_of(self, value: int) -> int:
        if self.colors is None:
            raise InputError("forced certificate carries no coloring")
        return self.colors[self.elements.index(value)]


def _backtrack(elements: Sequence[int], r: int,
               instances: Sequence[tuple[int, ...]],
               node_budget: int, reverse: bool = False
               ) -> tuple[list[int] | None, int]:
    """Complete search for a coloring with no monochromatic instance.

    Color-relabeling symmetry is broken by only allowing a new color index
    once all smaller indices exist, which pins element one to color zero.
    """
    order = list(elements)
    if reverse:
        order.reverse()
    pos_of = {v: i for i, v in enumerate(order)}
    by_last: list[list[tuple[int, ...]]] = [[] for _ in order]
    for inst in instances:
        poss = sorted(pos_of[v] for v in inst)
        by_last[poss[-1]].append(tuple(poss))
    colors = [-1] * len(order)
    nodes = 0

    def rec(i: int, used: int) -> bool:
        nonlocal nodes
        if i == len(order):
            return True
        for c in range(min(r - 1, used) + 1):
            nodes += 1
            if nodes > node_budget:
                raise BudgetError(f"budget-exceeded: {nodes} search nodes")
            colors[i] = c
            if not any(all(colors[p] == c for p in ps) for ps in by_last[i]):
                if rec(i + 1, max(used, c + 1)):
                    return True
        colors[i] = -1
        return False

    if rec(0, 0):
        by_element = [colors[pos_of[v]] for v in elements]
        return by_element, nodes
    return None, nodes


def _canonicalize(colors: Sequence[int]) -> tuple[int, ...]:
    relabel: dict[int, int] = {}
    out = []
    for c in colors:
        if c not in relabel:
            relabel[c] = len(relabel)
        out.append(relabel[c])
    return tuple(out)


def find_avoiding_coloring(n: int, r: int, pattern: Pattern,
                           instance_budget: int = DEFAULT_INSTANCE_BUDGET,
                           node_budget: int = DEFAULT_NODE_BUDGET,
                           reverse: bool = False) -> ColoringCertificate:
    """Search all r-colorings of [1..n] for one avoiding the pattern.

    Returns an explicit coloring (canonicalized; in forward order it is the
    lexicographically least canonical one) or a forced record backed by
    exhaustive search.  reverse flips the assignment order, which must not
    change the verdict.
    """
    if n < 1 or r < 1:
        raise InputError("need n >= 1 and r >= 1")
    elements = tuple(range(1, n + 1))
    instances = pattern.instances(n, instance_budget)
    colors, nodes = _backtrack(elements, r, instances, node_budget, reverse)
    if colors is None:
        return ColoringCertificate("forced", elements, None, nodes, True,
                                   pattern.label, n, r)
    return ColoringCertificate("avoiding", elements, _canonicalize(colors),
                               nodes, False, pattern.label, n, r)


def verify_coloring(cert: ColoringCertificate, pattern: Pattern) -> bool:
    """Independent full re-scan: no instance inside the colored set may be
    monochromatic.  Only meaningful for avoiding certificates."""
    if cert.outcome != "avoiding" or cert.colors is None:
        return False
    color = dict(zip(cert.elements, cert.colors))
    if any(c >= cert.r for c in cert.colors):
        return False
    eset = set(cert.elements)
    for inst in pattern.instances(max(cert.elements)):
        if all(v in eset for v in inst):
            if len({color[v] for v in inst}) == 1:
                return False
    return True


@dataclass(frozen=True)
class ThresholdResult:
    threshold: int | None  # least forced N, None if not reached
    nmax: int
    pattern: str
    r: int


def ramsey_threshold(pattern: Pattern, r: int, nmax: int,
                     instance_budget: int = DEFAULT_INSTANCE_BUDGET,
                     node_budget: int = DEFAULT_NODE_BUDGET) -> ThresholdResult:
    """Least N <= nmax at which no avoiding coloring exists.

    Once some N is forced every larger N is too (its colorings restrict),
    so the scan stops at the first forced verdict.
    """
    if nmax < 1:
        raise InputError("nmax must be >= 1")
    for n in range(1, nmax + 1):
        cert = find_avoiding_coloring(n, r, pattern, instance_budget,
                                      node_budget)
        if cert.outcome == "forced":
            return ThresholdResult(n, nmax, pattern.label, r)
    return ThresholdResult(None, nmax, pattern.label, r)


def strong_pr_probe(a_values: Iterable[int], pattern: Pattern, r: int,
                    instance_budget: int = DEFAULT_INSTANCE_BUDGET,
                    node_budget: int = DEFAULT_NODE_BUDGET,
                    reverse: bool = False) -> ColoringCertificate:
    """Partition the explicit set A itself: forced when every r-partition of
    A leaves a monochromatic instance inside A, else an avoiding partition."""
    elements = tuple(sorted(set(a_values)))
    if not elements:
        raise InputError("A must be non-empty")
    if any(v < 1 for v in elements):
        raise InputError("pattern search elements must be >= 1")
    eset = set(elements)
    instances = [inst for inst in pattern.instances(max(elements),
                                                    instance_budget)
                 if all(v in eset for v in inst)]
    colors, nodes = _backtrack(elements, r, instances, node_budget, reverse)
    if colors is None:
        return ColoringCertificate("forced", elements, None, nodes, True,
                                   pattern.label, max(elements), r)
    return ColoringCertificate("avoiding", elements, _canonicalize(colors),
                               nodes, False, pattern.label, max(elements), r)


# -- homogeneous equations -----------------------------------------------------

def homogeneous_pr_check(poly: Polynomial, r: int, n: int,
                         distinct: bool = False, strict: bool = True,
                         instance_budget: int = DEFAULT_INSTANCE_BUDGET,
                         node_budget: int = DEFAULT_NODE_BUDGET
                         ) -> tuple[ColoringCertificate, HomogeneityReport]:
    """Homogeneity check followed by the avoiding-coloring search for the
    equation pattern of P = 0 over [1..n].

    strict mode rejects non-homogeneous polynomials outright; otherwise the
    report simply records the failure and the search still runs.
    """
    if poly.nvars < 1:
        raise InputError("zero-variables")
    report = homogeneity_report(poly)
    if strict and not report.homogeneous:
        raise InputError(f"non-homogeneous-rejected: degrees "
                         f"{report.monomial_degrees}")
    cert = find_avoiding_coloring(n, r, equation_pattern(poly, distinct),
                                  instance_budget, node_budget)
    return cert, report


def ps_solutions_experiment(poly: Polynomial, A, n: int,
                            budget: int = DEFAULT_INSTANCE_BUDGET
                            ) -> list[tuple[int, ...]]:
    """All ordered solutions of P = 0 with entries in A intersected [1..n].

    A is a ground set on a numeric window; homogeneity is required since the
    experiment exercises multiplicative upward invariance.
    """
    if not poly.is_homogeneous:
        raise InputError("ps experiment needs a homogeneous polynomial")
    domain = [v for v in A.values() if isinstance(v, int) and 1 <= v <= n]
    if len(domain) ** poly.nvars > budget:
        raise BudgetError(f"budget-exceeded: {len(domain)}^{poly.nvars} tuples")
    return list(_solutions(poly, domain))
