"""Deciding finite embeddability between window sets, with witnesses.

A set A embeds into B over a family when every finite F inside A admits some
family member mapping F^n into B.  For explicit finite A the single query
F = A settles the whole relation (images of subsets are subsets of images),
so the decision procedure is: stream candidate parameters for (F, B), verify
each by direct evaluation, and report the first witness in stream order.

Verdicts are three-valued: "no" is reserved for exhausted *complete* streams,
bounded scans that find nothing return "unknown".
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .carrier import GroundSet, Payload
from .errors import InputError, UnionEmbeddingError, UnverifiedPairError
from .families import FamilySpec, Params

# n >= 2 image computation enumerates |F|^n tuples; cap |F| to keep that sane.
DEFAULT_TUPLE_CAP = 12

YES = "yes"
NO = "no"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class EmbedWitness:
    """The finite set, the parameters, and the verified image inside B."""

    F: tuple[Payload, ...]
    params: Params
    image: tuple[Payload, ...]


@dataclass(frozen=True)
class SearchStats:
    params_examined: int
    complete: bool


@dataclass(frozen=True)
class EmbedVerdict:
    outcome: str  # yes | no | unknown
    witness: EmbedWitness | None
    stats: SearchStats

    def __bool__(self) -> bool:
        return self.outcome == YES


def image_of(family: FamilySpec, params: Params,
             fpay: Sequence[Payload]) -> tuple[Payload, ...] | None:
    """f_params(F^n) as a sorted payload tuple, or None if any value
    overflows the window."""
    out = set()
    for tup in itertools.product(fpay, repeat=family.arity):
        y = family.g(tup, params)
        if y is None:
            return None
        out.add(y)
    return tuple(sorted(out, key=family.window.encoding))


def embed_finite(F: Iterable[Payload], B: GroundSet, family: FamilySpec,
                 bound: int | None = None,
                 tuple_cap: int = DEFAULT_TUPLE_CAP) -> EmbedVerdict:
    """Is there a family member mapping F^n into B?

    The reported witness is the first one in the family's canonical
    parameter enumeration order, making results deterministic.
    """
    fpay = family._normalize_f(F)
    if family.arity >= 2 and len(fpay) > tuple_cap:
        raise InputError(
            f"|F|={len(fpay)} exceeds the tuple cap {tuple_cap} for "
            f"arity {family.arity}; raise tuple_cap explicitly if intended")
    stream = family.enumerate_params(fpay, B, bound)
    tuples = list(itertools.product(fpay, repeat=family.arity))
    examined = 0
    for params in stream.params:
        examined += 1
        image = set()
        ok = True
        for tup in tuples:
            y = family.g(tup, params)
            if y is None or not B.contains_value(y):
                ok = False
                break
            image.add(y)
        if ok:
            witness = EmbedWitness(
                fpay, params, tuple(sorted(image, key=family.window.encoding)))
            return EmbedVerdict(YES, witness, SearchStats(examined, stream.complete))
    outcome = NO if stream.complete else UNKNOWN
    return EmbedVerdict(outcome, None, SearchStats(examined, stream.complete))


def fe_decide(A: GroundSet, B: GroundSet, family: FamilySpec,
              bound: int | None = None,
              tuple_cap: int = DEFAULT_TUPLE_CAP) -> EmbedVerdict:
    """Decide A <=_family B for an explicit finite A.

    F = A is the hardest finite subset: any f with f(A^n) inside B also maps
    every smaller F^n inside B.
    """
    if not A.explicit:
        raise InputError("A-not-explicit: fe_decide needs an explicit finite set")
    avals = list(A.values())
    if not avals:
        raise InputError("A must be non-empty")
    return embed_finite(avals, B, family, bound, tuple_cap)


def verify_witness(witness: EmbedWitness, B: GroundSet,
                   family: FamilySpec) -> bool:
    """Re-check a witness by direct evaluation and membership queries."""
    if not family.r_accepts(witness.params):
        return False
    img = image_of(family, witness.params, witness.F)
    if img is None or set(img) != set(witness.image):
        return False
    return all(B.contains_value(y) for y in img)


# -- probing predicate sets ---------------------------------------------------

@dataclass(frozen=True)
class ProbeEntry:
    size: int
    F: tuple[Payload, ...]
    verdict: EmbedVerdict
    randomized: bool = False


@dataclass(frozen=True)
class ProbeReport:
    entries: tuple[ProbeEntry, ...]

    @property
    def refutation(self) -> ProbeEntry | None:
        for e in self.entries:
            if e.verdict.outcome == NO:
                return e
        return None

    @property
    def overall(self) -> str:
        if self.refutation is not None:
            return "refuted"
        if all(e.verdict.outcome == YES for e in self.entries):
            return "supported"
        return "inconclusive"


def fe_probe(A: GroundSet, B: GroundSet, family: FamilySpec,
             probe_sizes: Sequence[int], bound: int | None = None,
             random_subsets: int = 0, seed: int = 0,
             tuple_cap: int = DEFAULT_TUPLE_CAP) -> ProbeReport:
    """Probe A <=_family B through canonical-order prefixes of A.

    A "no" at any probe is a witnessed counterexample to the whole relation;
    all-yes is evidence only, since larger finite subsets remain unchecked.
    With random_subsets > 0, seeded random size-p subsets of A supplement the
    deterministic prefixes.
    """
    if list(probe_sizes) != sorted(probe_sizes) or not probe_sizes:
        raise InputError("probe sizes must be a non-empty ascending list")
    pool: list[Payload] = []
    need = max(probe_sizes) * (4 if random_subsets else 1)
    for enc in A.iter_enc():
        pool.append(A.window.payload(enc))
        if len(pool) >= need:
            break
    if not pool:
        raise InputError("A-empty: nothing to probe")
    entries: list[ProbeEntry] = []
    rng = random.Random(seed)
    for p in probe_sizes:
        prefix = tuple(pool[:min(p, len(pool))])
        entries.append(ProbeEntry(
            p, prefix, embed_finite(prefix, B, family, bound, tuple_cap)))
        for _ in range(random_subsets):
            if len(pool) <= p:
                break
            sub = tuple(sorted(rng.sample(pool, p), key=A.window.encoding))
            entries.append(ProbeEntry(
                p, sub, embed_finite(sub, B, family, bound, tuple_cap), True))
    return ProbeReport(tuple(entries))


# -- structural criteria ------------------------------------------------------

@dataclass(frozen=True)
class UnionSplitResult:
    index: int  # 1-based, matching the "some i <= k" reading
    verdict: EmbedVerdict
    per_family: tuple[str, ...]


def check_union_split(A: GroundSet, B: GroundSet,
                      families: Sequence[FamilySpec],
                      bound: int | None = None) -> UnionSplitResult:
    """Find one family of the union that already embeds A into B.

    For explicit finite A the union relation holds iff some single family
    embeds it, so the index always exists when the precondition does.
    Families are tried in order and the scan stops at the first success;
    later families are reported as "skipped".
    """
    outcomes: list[str] = []
    for i, fam in enumerate(families):
        v = fe_decide(A, B, fam, bound)
        outcomes.append(v.outcome)
        if v.outcome == YES:
            outcomes.extend("skipped" for _ in families[i + 1:])
            return UnionSplitResult(i + 1, v, tuple(outcomes))
    raise UnionEmbeddingError(
        f"union-embedding-fails: per-family outcomes {tuple(outcomes)}")


@dataclass(frozen=True)
class CriterionEntry:
    F: tuple[Payload, ...]
    f_params: Params | None
    g_params: Params | None
    status: str  # satisfied | violated | unknown | skipped-overflow
    h_params: Params | None


@dataclass(frozen=True)
class CriterionReport:
    criterion: str
    entries: tuple[CriterionEntry, ...]

    @property
    def satisfied(self) -> bool:
        return all(e.status != "violated" for e in self.entries)

    @property
    def skipped(self) -> int:
        return sum(e.status == "skipped-overflow" for e in self.entries)


def check_transitive_criterion(family: FamilySpec,
                               sample_F: Sequence[Iterable[Payload]],
                               params_per_side: int = 4,
                               bound: int | None = None,
                               tuple_cap: int = DEFAULT_TUPLE_CAP) -> CriterionReport:
    """Transitivity test: for each sampled F and members f, g, look for an
    h with h(F^n) inside g([f(F^n)]^n).

    Triples whose intermediate images overflow the window are skipped (the
    composition is not observable at this scale), and counted.
    """
    sample_params = family.param_sample(params_per_side, bound)
    entries: list[CriterionEntry] = []
    for F in sample_F:
        fpay = family._normalize_f(F)
        for pf in sample_params:
            mid = image_of(family, pf, fpay)
            if mid is None or (family.arity >= 2 and len(mid) > tuple_cap):
                entries.append(CriterionEntry(fpay, pf, None,
                                              "skipped-overflow", None))
                continue
            for pg in sample_params:
                target = image_of(family, pg, mid)
                if target is None:
                    entries.append(CriterionEntry(fpay, pf, pg,
                                                  "skipped-overflow", None))
                    continue
                tset = GroundSet.from_values(family.window, target,
                                             label="g(f(F)^n)")
                v = embed_finite(fpay, tset, family, bound, tuple_cap)
                status = {YES: "satisfied", NO: "violated",
                          UNKNOWN: "unknown"}[v.outcome]
                h = v.witness.params if v.witness else None
                entries.append(CriterionEntry(fpay, pf, pg, status, h))
    return CriterionReport("transitive", tuple(entries))


def check_reflexive_criterion(family: FamilySpec,
                              sample_F: Sequence[Iterable[Payload]],
                              bound: int | None = None,
                              tuple_cap: int = DEFAULT_TUPLE_CAP) -> CriterionReport:
    """Reflexivity test: each sampled F must admit f with f(F^n) inside F."""
    entries: list[CriterionEntry] = []
    for F in sample_F:
        fpay = family._normalize_f(F)
        fset = GroundSet.from_values(family.window, fpay, label="F")
        v = embed_finite(fpay, fset, family, bound, tuple_cap)
        status = {YES: "satisfied", NO: "violated", UNKNOWN: "unknown"}[v.outcome]
        entries.append(CriterionEntry(
            fpay, None, None, status, v.witness.params if v.witness else None))
    return CriterionReport("reflexive", tuple(entries))


# -- upward-closed set properties ---------------------------------------------

@dataclass(frozen=True)
class ClosureEntry:
    a_label: str
    b_label: str
    a_has_property: bool
    b_has_property: bool
    status: str  # transfers | violated | vacuous


@dataclass(frozen=True)
class ClosureReport:
    property_name: str
    entries: tuple[ClosureEntry, ...]

    @property
    def closed_on_sample(self) -> bool:
        return all(e.status != "violated" for e in self.entries)

    @property
    def counterexamples(self) -> tuple[ClosureEntry, ...]:
        return tuple(e for e in self.entries if e.status == "violated")


def check_upward_closed(prop: Callable[[GroundSet], bool], prop_name: str,
                        pairs: Sequence[tuple[GroundSet, GroundSet]],
                        family: FamilySpec,
                        bound: int | None = None) -> ClosureReport:
    """Does membership in the property transfer from A to B along A <= B?

    Every pair is re-verified to embed before being used; a pair that fails
    raises UnverifiedPairError rather than polluting the report.
    """
    entries: list[ClosureEntry] = []
    for A, B in pairs:
        v = fe_decide(A, B, family, bound)
        if v.outcome != YES:
            raise UnverifiedPairError(
                f"unverified-pair: {A.label!r} does not provably embed in "
                f"{B.label!r} (outcome {v.outcome})")
        a_in, b_in = prop(A), prop(B)
        if not a_in:
            status = "vacuous"
        elif b_in:
            status = "transfers"
        else:
            status = "violated"
        entries.append(ClosureEntry(A.label, B.label, a_in, b_in, status))
    return ClosureReport(prop_name, tuple(entries))
