"""Function families given as generating pairs.

A family is a single generating map G : S^n x S^k -> S together with a
parameter region R; the family's members are the parameter sections
f_params(tuple) = G(tuple, params).  Built-ins cover right/left translations,
affine maps a + b*x, geoarithmetic maps r^n (a + m*b), restricted-coefficient
polynomials, and the word-suffix maps w -> w a^n; custom families come from a
small closed term catalog so their parameter searches stay analyzable.

Parameter enumeration for a concrete query (F, B) is either

  complete-anchored: a finite candidate list derived from the query itself,
      guaranteed to contain a witness whenever one exists (so an exhausted
      stream soundly refutes), or
  bounded-scan: all parameter tuples up to a magnitude bound, streamed in
      max-norm-then-lexicographic order, with no completeness claim.

Every stream is deterministic, so the first witness found is canonical.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from .carrier import (ADDITIVE, FREE_WORDS, MULTIPLICATIVE, OVERFLOW,
                      Element, GroundSet, Payload, Window, _is_prime)
from .errors import InputError

Params = tuple
Tuple_ = tuple


@dataclass(frozen=True)
class ParamStream:
    """Candidate parameter tuples for one (F, B) query."""

    params: Iterator[Params]
    complete: bool


@dataclass(frozen=True)
class FamilySpec:
    """A function family F(G, R) evaluated over one window."""

    name: str
    window: Window
    arity: int
    param_arity: int
    _g: Callable[[Tuple_, Params], Payload | None]
    _r: Callable[[Params], bool]
    _scan_lists: Callable[[int], Sequence[Sequence]]
    _anchored: Callable[[Tuple_, GroundSet], list[Params]] | None = None
    _explicit_params: tuple[Params, ...] | None = None
    default_bound: int = 64

    # -- evaluation -------------------------------------------------------

    def g(self, tup: Tuple_, params: Params) -> Payload | None:
        """Raw generating map on payloads; None encodes overflow."""
        return self._g(tup, params)

    def r_accepts(self, params: Params) -> bool:
        return len(params) == self.param_arity and self._r(params)

    def apply(self, params: Params, tup: Tuple_) -> Element | object:
        """Evaluate f_params on an argument tuple of payloads or Elements."""
        params = tuple(params)
        if not self.r_accepts(params):
            raise InputError(f"params-outside-R: {params!r} for {self.name}")
        payloads = tuple(
            self.window.payload(t.encoding) if isinstance(t, Element) else t
            for t in tup)
        if len(payloads) != self.arity:
            raise InputError(
                f"arity-mismatch: expected {self.arity} arguments")
        for p in payloads:
            if not self.window.contains_value(p):
                raise InputError(f"element-out-of-window: {p!r}")
        out = self._g(payloads, params)
        if out is None:
            return OVERFLOW
        return self.window.element(self.window.encoding(out))

    # -- parameter enumeration ---------------------------------------------

    def enumerate_params(self, F: Iterable[Payload],
                         B: GroundSet, bound: int | None = None) -> ParamStream:
        """Stream candidate parameters for "some f maps F^n into B".

        The completeness flag is True only when the stream provably contains
        a witness whenever one exists (anchored mode, or a family whose
        parameter list is explicit); bounded scans always report False.
        An empty stream is a valid result.
        """
        fpay = self._normalize_f(F)
        if self._explicit_params is not None:
            return ParamStream(iter(self._explicit_params), True)
        if self._anchored is not None:
            cands = [p for p in self._anchored(fpay, B) if self._r(p)]
            return ParamStream(iter(_dedup_sorted(cands)), True)
        b = bound if bound is not None else self.default_bound
        lists = self._scan_lists(b)
        it = (p for p in _shell_order(lists) if self._r(p))
        return ParamStream(it, False)

    def param_sample(self, count: int, bound: int | None = None) -> list[Params]:
        """First count parameter tuples of R in canonical scan order."""
        if self._explicit_params is not None:
            return list(self._explicit_params[:count])
        b = bound if bound is not None else self.default_bound
        out = []
        for p in _shell_order(self._scan_lists(b)):
            if self._r(p):
                out.append(p)
                if len(out) >= count:
                    break
        return out

    def _normalize_f(self, F: Iterable[Payload]) -> Tuple_:
        pays = []
        for t in F:
            p = self.window.payload(t.encoding) if isinstance(t, Element) else t
            if not self.window.contains_value(p):
                raise InputError(f"F-outside-window: {p!r}")
            pays.append(p)
        if not pays:
            raise InputError("F must be non-empty")
        return tuple(sorted(pays, key=self.window.encoding))

    def __repr__(self) -> str:
        return (f"FamilySpec({self.name}, n={self.arity}, "
                f"k={self.param_arity})")


def _component_key(v):
    return (len(v), v) if isinstance(v, str) else (v, "")


def _dedup_sorted(cands: Iterable[Params]) -> list[Params]:
    return sorted(set(cands), key=lambda p: tuple(_component_key(v) for v in p))


def _shell_order(lists: Sequence[Sequence]) -> Iterator[Params]:
    """Tuples from the cartesian product of ascending candidate lists,
    ordered by maximum coordinate *rank* first, then lexicographically.

    Small parameters come first, and every finite prefix of the product is
    eventually emitted, so exhaustion order is reproducible.
    """
    k = len(lists)
    if k == 0 or any(not lst for lst in lists):
        return
    top = max(len(lst) for lst in lists)

    def rec(i: int, shell: int, must_hit: bool, prefix: list) -> Iterator[Params]:
        if i == k:
            if not must_hit:
                yield tuple(prefix)
            return
        lst = lists[i]
        hi = min(shell, len(lst) - 1)
        for j in range(hi + 1):
            prefix.append(lst[j])
            yield from rec(i + 1, shell, must_hit and j < shell, prefix)
            prefix.pop()

    for shell in range(top):
        yield from rec(0, shell, True, [])


# -- built-in families ------------------------------------------------------

def builtin_right_translations(window: Window) -> FamilySpec:
    """f_r(s) = s * r for r ranging over the whole carrier."""
    return _translations(window, right=True)


def builtin_left_translations(window: Window) -> FamilySpec:
    """g_r(s) = r * s for r ranging over the whole carrier."""
    return _translations(window, right=False)


def _translations(window: Window, right: bool) -> FamilySpec:
    def g(tup: Tuple_, params: Params) -> Payload | None:
        (s,), (r,) = tup, params
        return window.op_payload(s, r) if right else window.op_payload(r, s)

    def anchored(fpay: Tuple_, B: GroundSet) -> list[Params]:
        w0 = fpay[0]
        cands: list[Params] = []
        for b in B.values():
            r = _solve_translation(window, w0, b, right)
            if r is not None:
                cands.append((r,))
        return cands

    payloads = list(window.payloads())
    return FamilySpec(
        name="translations-right" if right else "translations-left",
        window=window, arity=1, param_arity=1,
        _g=g, _r=lambda p: window.contains_value(p[0]),
        _scan_lists=lambda bound: [payloads],
        _anchored=anchored,
        default_bound=window.bound)


def _solve_translation(window: Window, w0: Payload, b: Payload,
                       right: bool) -> Payload | None:
    """The unique r with w0*r = b (resp. r*w0 = b), if any."""
    if window.kind == ADDITIVE:
        r = b - w0
        return r if r >= 0 else None
    if window.kind == MULTIPLICATIVE:
        return b // w0 if b % w0 == 0 else None
    if window.kind == FREE_WORDS:
        if right:
            if b != w0 and b.startswith(w0):
                return b[len(w0):]
        else:
            if b != w0 and b.endswith(w0):
                return b[:-len(w0)]
        return None
    for r in window.payloads():
        prod = window.op_payload(w0, r) if right else window.op_payload(r, w0)
        if prod == b:
            return r
    return None


def builtin_affine(window: Window) -> FamilySpec:
    """f_{a,b}(x) = a + b*x with slope b >= 1, on the additive carrier.

    Anchored enumeration: with two anchor points f1 < f2 in F, every witness
    (a, b) sends them to some pair (beta1, beta2) in B^2 and is recovered by
    solving the two linear equations; singleton F admits a direct solve.
    """
    _require_kind(window, ADDITIVE, "affine")

    def g(tup: Tuple_, params: Params) -> Payload | None:
        (x,), (a, b) = tup, params
        y = a + b * x
        return y if y <= window.bound else None

    def anchored(fpay: Tuple_, B: GroundSet) -> list[Params]:
        bvals = list(B.values())
        cands: list[Params] = []
        if len(fpay) >= 2:
            f1, f2 = fpay[0], fpay[1]
            den = f2 - f1
            for b1 in bvals:
                for b2 in bvals:
                    num = b2 - b1
                    if num <= 0 or num % den:
                        continue
                    slope = num // den
                    inter = b1 - slope * f1
                    if inter >= 0:
                        cands.append((inter, slope))
        else:
            x = fpay[0]
            for beta in bvals:
                if x == 0:
                    cands.append((beta, 1))
                else:
                    for slope in range(1, beta // x + 1):
                        cands.append((beta - slope * x, slope))
        return cands

    return FamilySpec(
        name="affine", window=window, arity=1, param_arity=2,
        _g=g, _r=lambda p: p[0] >= 0 and p[1] >= 1,
        _scan_lists=lambda bound: [range(bound + 1)] * 2,
        _anchored=anchored,
        default_bound=max(window.bound, 64))


def builtin_geoarithmetic(window: Window) -> FamilySpec:
    """f_{r,a,b}(n, m) = r^n (a + m*b) with r > 1, b > 0.

    No anchored candidate derivation is known for this shape, so queries use
    a bounded scan and negative answers stay "unknown".
    """
    _require_kind(window, ADDITIVE, "geoarithmetic")

    def g(tup: Tuple_, params: Params) -> Payload | None:
        (n, m), (r, a, b) = tup, params
        if n * (r.bit_length() - 1) > window.bound.bit_length():
            return None
        y = r ** n * (a + m * b)
        return y if y <= window.bound else None

    return FamilySpec(
        name="geoarithmetic", window=window, arity=2, param_arity=3,
        _g=g, _r=lambda p: p[0] >= 2 and p[1] >= 0 and p[2] >= 1,
        _scan_lists=lambda bound: [range(bound + 1)] * 3,
        default_bound=max(window.bound, 64))


def builtin_polynomial(s_coeffs: GroundSet, d_indices: Iterable[int],
                       degree: int) -> FamilySpec:
    """Polynomials sum a_i x^i whose coefficients sit in s_coeffs exactly at
    the indices in d_indices (zero elsewhere), degree capped at `degree`.

    When d_indices reaches past the constant term, the all-constant parameter
    tuples are excluded so every member is a genuine non-constant polynomial.
    """
    window = s_coeffs.window
    _require_kind(window, ADDITIVE, "polynomial")
    dset = tuple(sorted(set(d_indices)))
    if not dset:
        raise InputError("empty-D: need at least one coefficient index")
    if dset[0] < 0 or dset[-1] > degree:
        raise InputError(f"inconsistent-degree: D={dset} vs degree {degree}")
    nonconstant = dset[-1] >= 1

    def g(tup: Tuple_, params: Params) -> Payload | None:
        (x,) = tup
        y = sum(a * x ** i for i, a in zip(dset, params))
        return y if y <= window.bound else None

    def r(params: Params) -> bool:
        if not all(a in s_coeffs for a in params):
            return False
        if nonconstant and all(a == 0 for i, a in zip(dset, params) if i >= 1):
            return False
        return True

    def scan_lists(bound: int) -> Sequence[Sequence]:
        vals = [v for v in s_coeffs.values() if v <= bound]
        return [vals] * len(dset)

    return FamilySpec(
        name=f"polynomial(D={list(dset)})", window=window,
        arity=1, param_arity=len(dset),
        _g=g, _r=r, _scan_lists=scan_lists,
        default_bound=max(window.bound, 64))


def builtin_word_suffix(window: Window, letter: str) -> FamilySpec:
    """f_j(w) = w letter^j over the free-word carrier, j >= 0."""
    _require_kind(window, FREE_WORDS, "word-suffix")
    if letter not in (window.alphabet or ()):
        raise InputError(f"letter-not-in-alphabet: {letter!r}")

    def g(tup: Tuple_, params: Params) -> Payload | None:
        (w,), (j,) = tup, params
        out = w + letter * j
        return out if len(out) <= window.bound else None

    def anchored(fpay: Tuple_, B: GroundSet) -> list[Params]:
        w0 = fpay[0]
        cands: list[Params] = []
        for b in B.values():
            if b == w0:
                cands.append((0,))
            elif b.startswith(w0) and set(b[len(w0):]) == {letter}:
                cands.append((len(b) - len(w0),))
        return cands

    return FamilySpec(
        name=f"word-suffix({letter})", window=window, arity=1, param_arity=1,
        _g=g, _r=lambda p: p[0] >= 0,
        _scan_lists=lambda bound: [range(bound + 1)],
        _anchored=anchored,
        default_bound=window.bound)


def _require_kind(window: Window, kind: str, name: str) -> None:
    if window.kind != kind:
        raise InputError(f"wrong-carrier: {name} needs {kind}, "
                         f"got {window.kind}")


# -- custom families from the term catalog -----------------------------------

_TOKEN = re.compile(r"\s*(\d+|slot\d+|param\d+|[()+*^])")


def _tokenize(term: str) -> list[str]:
    toks, pos = [], 0
    while pos < len(term):
        m = _TOKEN.match(term, pos)
        if not m:
            raise InputError(f"malformed-term: cannot read {term[pos:]!r}")
        toks.append(m.group(1))
        pos = m.end()
    return toks


class _TermParser:
    """sum := prod (+ prod)* ; prod := pow (* pow)* ; pow := atom (^ pow)?"""

    def __init__(self, toks: list[str], n: int, k: int):
        self.toks, self.pos, self.n, self.k = toks, 0, n, k

    def peek(self) -> str | None:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def eat(self) -> str:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def parse(self):
        node = self.sum()
        if self.pos != len(self.toks):
            raise InputError(f"malformed-term: trailing {self.toks[self.pos:]}")
        return node

    def sum(self):
        parts = [self.prod()]
        while self.peek() == "+":
            self.eat()
            parts.append(self.prod())
        return ("+", parts) if len(parts) > 1 else parts[0]

    def prod(self):
        parts = [self.pow()]
        while self.peek() == "*":
            self.eat()
            parts.append(self.pow())
        return ("*", parts) if len(parts) > 1 else parts[0]

    def pow(self):
        base = self.atom()
        if self.peek() == "^":
            self.eat()
            return ("^", [base, self.pow()])
        return base

    def atom(self):
        tok = self.peek()
        if tok is None:
            raise InputError("malformed-term: unexpected end")
        if tok == "(":
            self.eat()
            node = self.sum()
            if self.peek() != ")":
                raise InputError("malformed-term: missing )")
            self.eat()
            return node
        self.eat()
        if tok.isdigit():
            return ("const", int(tok))
        if tok.startswith("slot"):
            i = int(tok[4:])
            if i >= self.n:
                raise InputError(f"arity-mismatch: {tok} with n={self.n}")
            return ("slot", i)
        if tok.startswith("param"):
            j = int(tok[5:])
            if j >= self.k:
                raise InputError(f"arity-mismatch: {tok} with k={self.k}")
            return ("param", j)
        raise InputError(f"malformed-term: {tok!r}")


def _eval_term(node, slots: Tuple_, params: Params) -> int:
    op = node[0]
    if op == "const":
        return node[1]
    if op == "slot":
        return slots[node[1]]
    if op == "param":
        return params[node[1]]
    vals = [_eval_term(ch, slots, params) for ch in node[1]]
    if op == "+":
        return sum(vals)
    if op == "*":
        out = 1
        for v in vals:
            out *= v
        return out
    base, exp = vals
    if exp < 0 or (exp > 64 and base > 1):
        raise InputError("term exponent out of range")
    return base ** exp


_R_CATALOG: dict[str, Callable[[Params], bool]] = {
    "N": lambda p: all(isinstance(v, int) and v >= 0 for v in p),
    "all": lambda p: True,
    "positive": lambda p: all(isinstance(v, int) and v >= 1 for v in p),
    "primes": lambda p: all(isinstance(v, int) and _is_prime(v) for v in p),
}


def make_family_from_pair(window: Window, n: int, k: int, term: str,
                          r_spec: str = "N",
                          mode: str = "bounded-scan",
                          bound: int | None = None) -> FamilySpec:
    """Family from a term over slot0..slot{n-1} and param0..param{k-1}.

    Terms compose integer constants with +, * and ^ (standard precedence,
    right-associative power); r_spec names a region from the catalog
    (N, all, positive, primes).  Custom terms only get bounded-scan
    enumeration: anchored completeness needs the per-builtin derivations.
    """
    if window.kind not in (ADDITIVE, MULTIPLICATIVE):
        raise InputError("pair families need a numeric carrier")
    if n < 1 or k < 0:
        raise InputError("arity-mismatch: need n >= 1, k >= 0")
    if mode != "bounded-scan":
        raise InputError(f"pair families support bounded-scan only, got {mode!r}")
    if r_spec not in _R_CATALOG:
        raise InputError(f"unknown parameter region {r_spec!r}")
    node = _TermParser(_tokenize(term), n, k).parse()
    region = _R_CATALOG[r_spec]

    def g(tup: Tuple_, params: Params) -> Payload | None:
        y = _eval_term(node, tup, params)
        return y if window.contains_value(y) else None

    return FamilySpec(
        name=f"pair[{term}]", window=window, arity=n, param_arity=k,
        _g=g, _r=region,
        _scan_lists=lambda b: [range(b + 1)] * k,
        default_bound=bound if bound is not None else max(window.bound, 64))


# -- derived families ---------------------------------------------------------

def restrict_params(base: FamilySpec, params_list: Iterable[Params],
                    name: str | None = None) -> FamilySpec:
    """The subfamily with parameters drawn from an explicit finite list.

    Enumeration walks exactly that list, so it is trivially complete.
    """
    plist = tuple(tuple(p) for p in params_list)
    for p in plist:
        if not base.r_accepts(p):
            raise InputError(f"params-outside-R: {p!r}")
    pset = set(plist)
    return FamilySpec(
        name=name or f"{base.name}|{len(plist)} params",
        window=base.window, arity=base.arity, param_arity=base.param_arity,
        _g=base._g, _r=lambda p: p in pset,
        _scan_lists=base._scan_lists,
        _explicit_params=plist,
        default_bound=base.default_bound)


def filter_params(base: FamilySpec, pred: Callable[[Params], bool],
                  name: str) -> FamilySpec:
    """The subfamily of base whose parameters also satisfy pred.

    A complete anchored stream for base stays complete after filtering,
    since the subfamily's witnesses are a subset of the base family's.
    """
    anchored = None
    if base._anchored is not None:
        anchored = lambda fpay, B: [p for p in base._anchored(fpay, B)
                                    if pred(p)]
    return FamilySpec(
        name=name, window=base.window, arity=base.arity,
        param_arity=base.param_arity,
        _g=base._g, _r=lambda p: base._r(p) and pred(p),
        _scan_lists=base._scan_lists,
        _anchored=anchored,
        default_bound=base.default_bound)
