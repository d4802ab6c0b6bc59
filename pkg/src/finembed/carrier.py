"""Finite windows of concrete semigroups and sets living inside them.

A Window is a closed truncation of a semigroup carrier: products that land
outside the window come back as the distinguished OVERFLOW outcome instead of
wrapping, so every downstream search can treat "left the window" as
"candidate rejected".  Four kinds are supported:

  additive-naturals        values 0..W under +
  multiplicative-naturals  values 1..W under *
  free-words               nonempty words of length <= L over a finite
                           alphabet, under concatenation (no identity)
  table                    an explicit finite operation table

Canonical element order is ascending value for numeric carriers and
length-then-lexicographic for words; encodings are indices into that order.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from .errors import InputError

ADDITIVE = "additive-naturals"
MULTIPLICATIVE = "multiplicative-naturals"
FREE_WORDS = "free-words"
TABLE = "table"

KINDS = (ADDITIVE, MULTIPLICATIVE, FREE_WORDS, TABLE)

# Hard cap on window size so word windows cannot blow up the encoding space.
MAX_WINDOW_SIZE = 1 << 20

Payload = int | str


class _Overflow:
    """Singleton outcome for products that leave the window."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "OVERFLOW"

    def __bool__(self) -> bool:
        return False


OVERFLOW = _Overflow()


@dataclass(frozen=True)
class Element:
    """One window element: canonical-order index plus its display form."""

    encoding: int
    display: str


class Window:
    """Immutable finite truncation of a semigroup carrier.

    Do not instantiate directly; use make_window / make_table_window.
    """

    def __init__(self, kind: str, bound: int, alphabet: tuple[str, ...] | None,
                 payloads: Sequence[Payload] | None,
                 table: Sequence[Sequence[int | None]] | None):
        self.kind = kind
        self.bound = bound
        self.alphabet = alphabet
        self._payloads = list(payloads) if payloads is not None else None
        self._table = table
        if kind == ADDITIVE:
            self.size = bound + 1
        elif kind == MULTIPLICATIVE:
            self.size = bound
        elif kind == FREE_WORDS:
            assert alphabet is not None
            a = len(alphabet)
            self.size = sum(a ** i for i in range(1, bound + 1))
        else:
            assert self._payloads is not None
            self.size = len(self._payloads)
        if self.size > MAX_WINDOW_SIZE:
            raise InputError(
                f"bound-too-large: window would hold {self.size} elements "
                f"(cap {MAX_WINDOW_SIZE})")
        self._enc_of: dict[Payload, int] | None = None
        if self._payloads is not None:
            self._enc_of = {p: i for i, p in enumerate(self._payloads)}
        self._identity_enc = self._find_identity()

    # -- canonical order -------------------------------------------------

    def payload(self, enc: int) -> Payload:
        """Value at canonical position enc (int for numeric, str for words)."""
        if not 0 <= enc < self.size:
            raise InputError(f"element-out-of-window: encoding {enc}")
        if self.kind == ADDITIVE:
            return enc
        if self.kind == MULTIPLICATIVE:
            return enc + 1
        if self.kind == FREE_WORDS:
            return self._word_of_enc(enc)
        return self._payloads[enc]  # type: ignore[index]

    def encoding(self, value: Payload) -> int:
        if self.kind == ADDITIVE:
            if isinstance(value, int) and 0 <= value <= self.bound:
                return value
        elif self.kind == MULTIPLICATIVE:
            if isinstance(value, int) and 1 <= value <= self.bound:
                return value - 1
        elif self.kind == FREE_WORDS:
            if isinstance(value, str):
                return self._enc_of_word(value)
        else:
            assert self._enc_of is not None
            if value in self._enc_of:
                return self._enc_of[value]
        raise InputError(f"element-out-of-window: {value!r}")

    def contains_value(self, value: Payload) -> bool:
        try:
            self.encoding(value)
        except InputError:
            return False
        return True

    def element(self, enc: int) -> Element:
        return Element(enc, self.display(self.payload(enc)))

    def display(self, payload: Payload) -> str:
        return payload if isinstance(payload, str) else str(payload)

    def parse(self, text: str) -> Element:
        """Inverse of display; Element displays round-trip through this."""
        if self.kind in (ADDITIVE, MULTIPLICATIVE):
            try:
                value: Payload = int(text)
            except ValueError as exc:
                raise InputError(f"unparseable numeral {text!r}") from exc
        else:
            value = text
        return Element(self.encoding(value), text)

    def payloads(self) -> Iterator[Payload]:
        for enc in range(self.size):
            yield self.payload(enc)

    # -- words -----------------------------------------------------------

    def _word_of_enc(self, enc: int) -> str:
        a = len(self.alphabet)  # type: ignore[arg-type]
        length, block = 1, a
        rest = enc
        while rest >= block:
            rest -= block
            length += 1
            block *= a
        letters = []
        for _ in range(length):
            letters.append(self.alphabet[rest % a])  # type: ignore[index]
            rest //= a
        return "".join(reversed(letters))

    def _enc_of_word(self, word: str) -> int:
        if not word or len(word) > self.bound:
            raise InputError(f"element-out-of-window: {word!r}")
        a = len(self.alphabet)  # type: ignore[arg-type]
        index = {c: i for i, c in enumerate(self.alphabet)}  # type: ignore[arg-type]
        offset = sum(a ** i for i in range(1, len(word)))
        rank = 0
        for ch in word:
            if ch not in index:
                raise InputError(f"letter {ch!r} not in alphabet")
            rank = rank * a + index[ch]
        return offset + rank

    # -- the operation ---------------------------------------------------

    def op_payload(self, x: Payload, y: Payload) -> Payload | None:
        """x*y at payload level; None encodes overflow."""
        if self.kind == ADDITIVE:
            z = x + y  # type: ignore[operator]
            return z if z <= self.bound else None
        if self.kind == MULTIPLICATIVE:
            z = x * y  # type: ignore[operator]
            return z if z <= self.bound else None
        if self.kind == FREE_WORDS:
            z = x + y  # type: ignore[operator]
            return z if len(z) <= self.bound else None
        enc = self._table[self.encoding(x)][self.encoding(y)]  # type: ignore[index]
        return None if enc is None else self.payload(enc)

    def op_enc(self, i: int, j: int) -> int | None:
        if self.kind == TABLE:
            if not (0 <= i < self.size and 0 <= j < self.size):
                raise InputError("element-out-of-window")
            return self._table[i][j]  # type: ignore[index]
        z = self.op_payload(self.payload(i), self.payload(j))
        return None if z is None else self.encoding(z)

    def _find_identity(self) -> int | None:
        if self.kind == ADDITIVE:
            return 0
        if self.kind == MULTIPLICATIVE:
            return 0  # payload 1
        if self.kind == FREE_WORDS:
            return None
        for e in range(self.size):
            if all(self._table[e][x] == x and self._table[x][e] == x  # type: ignore[index]
                   for x in range(self.size)):
                return e
        return None

    @property
    def identity_enc(self) -> int | None:
        return self._identity_enc

    def compatible(self, other: "Window") -> bool:
        return (self.kind == other.kind and self.bound == other.bound
                and self.alphabet == other.alphabet
                and self._table == other._table)

    def __repr__(self) -> str:
        extra = f", alphabet={''.join(self.alphabet)}" if self.alphabet else ""
        return f"Window({self.kind}, bound={self.bound}{extra}, size={self.size})"


def make_window(kind: str, bound: int,
                alphabet: Iterable[str] | None = None) -> Window:
    """Build a window of one of the named kinds.

    bound is the inclusive value cap for numeric carriers and the maximum
    word length for free-words.
    """
    if kind not in (ADDITIVE, MULTIPLICATIVE, FREE_WORDS):
        raise InputError(f"invalid-kind: {kind!r}")
    if bound < 1:
        raise InputError("bound must be >= 1")
    letters: tuple[str, ...] | None = None
    if kind == FREE_WORDS:
        letters = tuple(alphabet or ())
        if not letters:
            raise InputError("empty-alphabet: free-words needs letters")
        if any(len(c) != 1 for c in letters) or len(set(letters)) != len(letters):
            raise InputError("alphabet must be distinct single characters")
    elif alphabet:
        raise InputError(f"alphabet only applies to {FREE_WORDS}")
    return Window(kind, bound, letters, None, None)


def make_table_window(payloads: Sequence[Payload],
                      op: Callable[[Payload, Payload], Payload | None],
                      check: bool = True, seed: int = 0) -> Window:
    """Window over an explicit element list with a user-supplied operation.

    op returns the product payload, or None for overflow.  Associativity is
    checked on construction: exhaustively up to 64 elements, on random
    triples above that.
    """
    if not payloads:
        raise InputError("table window needs at least one element")
    if len(set(payloads)) != len(payloads):
        raise InputError("duplicate payloads in table window")
    enc_of = {p: i for i, p in enumerate(payloads)}
    n = len(payloads)
    table: list[list[int | None]] = []
    for x in payloads:
        row: list[int | None] = []
        for y in payloads:
            z = op(x, y)
            if z is None:
                row.append(None)
            elif z in enc_of:
                row.append(enc_of[z])
            else:
                raise InputError(f"operation escapes the table: {x!r}*{y!r}={z!r}")
        table.append(row)
    win = Window(TABLE, n, None, payloads, table)
    if check and not check_associative(win, seed=seed):
        raise InputError("operation table is not associative on the window")
    return win


def check_associative(window: Window, seed: int = 0, samples: int = 20000) -> bool:
    """(x*y)*z == x*(y*z) whenever all intermediate products stay in-window.

    Exhaustive for windows of <= 64 elements, seeded random sampling above.
    """
    n = window.size

    def ok(i: int, j: int, k: int) -> bool:
        ij = window.op_enc(i, j)
        jk = window.op_enc(j, k)
        if ij is None or jk is None:
            return True
        left = window.op_enc(ij, k)
        right = window.op_enc(i, jk)
        if left is None or right is None:
            return True
        return left == right

    if n <= 64:
        return all(ok(i, j, k)
                   for i in range(n) for j in range(n) for k in range(n))
    rng = random.Random(seed)
    return all(ok(rng.randrange(n), rng.randrange(n), rng.randrange(n))
               for _ in range(samples))


def op_apply(window: Window, x: Element, y: Element) -> Element | _Overflow:
    """Apply the window operation to two elements; OVERFLOW if it leaves."""
    for e in (x, y):
        if not 0 <= e.encoding < window.size:
            raise InputError(f"element-out-of-window: {e}")
    z = window.op_enc(x.encoding, y.encoding)
    return OVERFLOW if z is None else window.element(z)


class GroundSet:
    """A subset of a window: explicit bitset, or a memoized predicate.

    Membership queries outside the window raise InputError rather than
    answering False.  Instances are immutable from the caller's view; the
    predicate cache only ever grows monotonically, so concurrent readers see
    consistent answers.
    """

    def __init__(self, window: Window, *, bits: int | None = None,
                 predicate: Callable[[Payload], bool] | None = None,
                 label: str = ""):
        if (bits is None) == (predicate is None):
            raise InputError("exactly one of bits/predicate required")
        self.window = window
        self.label = label
        self._bits = bits if bits is not None else 0
        self._pred = predicate
        self._known_upto = window.size if bits is not None else 0
        self.explicit = bits is not None

    @classmethod
    def from_values(cls, window: Window, values: Iterable[Payload],
                    label: str = "") -> "GroundSet":
        bits = 0
        for v in values:
            bits |= 1 << window.encoding(v)
        return cls(window, bits=bits, label=label)

    @classmethod
    def from_predicate(cls, window: Window, pred: Callable[[Payload], bool],
                       label: str = "") -> "GroundSet":
        return cls(window, predicate=pred, label=label)

    @classmethod
    def full(cls, window: Window, label: str = "window") -> "GroundSet":
        return cls(window, bits=(1 << window.size) - 1, label=label)

    @classmethod
    def empty(cls, window: Window, label: str = "empty") -> "GroundSet":
        return cls(window, bits=0, label=label)

    def _extend(self, upto: int) -> None:
        bits = self._bits
        for enc in range(self._known_upto, upto + 1):
            if self._pred(self.window.payload(enc)):  # type: ignore[misc]
                bits |= 1 << enc
        self._bits = bits
        self._known_upto = upto + 1

    def contains_enc(self, enc: int) -> bool:
        if not 0 <= enc < self.window.size:
            raise InputError(f"membership query outside window: encoding {enc}")
        if enc >= self._known_upto:
            self._extend(enc)
        return bool(self._bits >> enc & 1)

    def contains_value(self, value: Payload) -> bool:
        return self.contains_enc(self.window.encoding(value))

    def __contains__(self, value: Payload) -> bool:
        return self.contains_value(value)

    def iter_enc(self) -> Iterator[int]:
        for enc in range(self.window.size):
            if self.contains_enc(enc):
                yield enc

    def values(self) -> Iterator[Payload]:
        for enc in self.iter_enc():
            yield self.window.payload(enc)

    def bits(self) -> int:
        """Dense bitset over all encodings (forces full evaluation)."""
        if self._known_upto < self.window.size:
            self._extend(self.window.size - 1)
        return self._bits

    def count(self) -> int:
        return self.bits().bit_count()

    def union(self, other: "GroundSet", label: str = "") -> "GroundSet":
        self._require_same_window(other)
        return GroundSet(self.window, bits=self.bits() | other.bits(),
                         label=label or f"union({self.label},{other.label})")

    def intersect(self, other: "GroundSet", label: str = "") -> "GroundSet":
        self._require_same_window(other)
        return GroundSet(self.window, bits=self.bits() & other.bits(),
                         label=label or f"intersect({self.label},{other.label})")

    def _require_same_window(self, other: "GroundSet") -> None:
        if not self.window.compatible(other.window):
            raise InputError("ground sets live in incompatible windows")

    def __repr__(self) -> str:
        tag = "explicit" if self.explicit else "predicate"
        return f"GroundSet({self.label or tag}, window={self.window!r})"


def elements(ground: GroundSet, cap: int) -> list[Element]:
    """First cap members in canonical order (all of them if fewer exist)."""
    if cap < 0:
        raise InputError("cap must be >= 0")
    out: list[Element] = []
    for enc in ground.iter_enc():
        if len(out) >= cap:
            break
        out.append(ground.window.element(enc))
    return out


# -- named builtin predicates for the JSON set format ----------------------

def _is_prime(v: int) -> bool:
    if v < 2:
        return False
    if v < 4:
        return True
    if v % 2 == 0:
        return False
    for d in range(3, math.isqrt(v) + 1, 2):
        if v % d == 0:
            return False
    return True


def _is_square(v: int) -> bool:
    return v >= 0 and math.isqrt(v) ** 2 == v


def _atomic_predicate(name: str, args: list[str]) -> Callable[[Payload], bool]:
    if name == "evens":
        return lambda v: isinstance(v, int) and v % 2 == 0
    if name == "odds":
        return lambda v: isinstance(v, int) and v % 2 == 1
    if name == "squares":
        return lambda v: isinstance(v, int) and _is_square(v)
    if name == "primes":
        return lambda v: isinstance(v, int) and _is_prime(v)
    if name == "multiples":
        if len(args) != 1:
            raise InputError("multiples:<m> takes one argument")
        m = int(args[0])
        if m < 1:
            raise InputError("multiples modulus must be >= 1")
        return lambda v: isinstance(v, int) and v % m == 0
    if name == "interval":
        if len(args) != 2:
            raise InputError("interval:<lo>:<hi> takes two arguments")
        lo, hi = int(args[0]), int(args[1])
        return lambda v: isinstance(v, int) and lo <= v <= hi
    if name == "all":
        return lambda v: True
    raise InputError(f"unknown builtin predicate {name!r}")


def _split_top(text: str) -> list[str]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return parts


def parse_predicate(spec: str) -> Callable[[Payload], bool]:
    """Parse the builtin predicate language of the JSON set format.

    Atoms: evens odds squares primes all multiples:<m> interval:<lo>:<hi>.
    Combinators: union(p,q,...) and intersect(p,q,...), nestable.
    """
    spec = spec.strip()
    for comb, fold in (("union", any), ("intersect", all)):
        if spec.startswith(comb + "(") and spec.endswith(")"):
            inner = spec[len(comb) + 1:-1]
            subs = [parse_predicate(p) for p in _split_top(inner)]
            if not subs:
                raise InputError(f"{comb}() needs at least one operand")
            return lambda v, subs=subs, fold=fold: fold(p(v) for p in subs)
    head, *args = spec.split(":")
    return _atomic_predicate(head.strip(), [a.strip() for a in args])
