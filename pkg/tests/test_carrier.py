import pytest
from hypothesis import given
from hypothesis import strategies as st

from finembed.carrier import (ADDITIVE, FREE_WORDS, MULTIPLICATIVE, OVERFLOW,
                              GroundSet, check_associative, elements,
                              make_table_window, make_window, op_apply,
                              parse_predicate)
from finembed.errors import InputError


def test_additive_window_basics():
    w = make_window(ADDITIVE, 100)
    assert w.size == 101
    assert [w.payload(i) for i in range(3)] == [0, 1, 2]
    assert w.identity_enc == 0
    assert op_apply(w, w.element(2), w.element(3)).display == "5"


def test_multiplicative_window_starts_at_one():
    w = make_window(MULTIPLICATIVE, 20)
    assert w.size == 20
    assert w.payload(0) == 1
    assert w.payload(w.identity_enc) == 1
    assert op_apply(w, w.parse("3"), w.parse("4")).display == "12"
    assert op_apply(w, w.parse("7"), w.parse("8")) is OVERFLOW
    with pytest.raises(InputError):
        make_window(MULTIPLICATIVE, 0)


def test_word_window_count_and_order():
    w = make_window(FREE_WORDS, 3, ["a", "b"])
    assert w.size == 14  # 2 + 4 + 8 nonempty words
    assert [w.payload(i) for i in range(6)] == ["a", "b", "aa", "ab", "ba", "bb"]
    assert w.identity_enc is None
    assert op_apply(w, w.parse("ab"), w.parse("a")).display == "aba"
    assert op_apply(w, w.parse("ab"), w.parse("ba")) is OVERFLOW


def test_window_errors():
    with pytest.raises(InputError):
        make_window("bogus", 5)
    with pytest.raises(InputError):
        make_window(FREE_WORDS, 3)
    with pytest.raises(InputError):
        make_window(FREE_WORDS, 25, ["a", "b"])  # > 2^20 encodings
    with pytest.raises(InputError):
        make_window(ADDITIVE, 0)


def test_overflow_is_explicit_not_wrapped():
    w = make_window(ADDITIVE, 10)
    assert op_apply(w, w.element(7), w.element(8)) is OVERFLOW


@given(st.integers(1, 60), st.data())
def test_display_roundtrip_numeric(bound, data):
    w = make_window(ADDITIVE, bound)
    enc = data.draw(st.integers(0, w.size - 1))
    el = w.element(enc)
    assert w.parse(el.display).encoding == enc


@given(st.integers(1, 4), st.data())
def test_display_roundtrip_words(length, data):
    w = make_window(FREE_WORDS, length, ["a", "b", "c"])
    enc = data.draw(st.integers(0, w.size - 1))
    el = w.element(enc)
    assert w.parse(el.display).encoding == enc
    # canonical order is length-then-lex, strictly increasing
    if enc:
        prev = w.payload(enc - 1)
        assert (len(prev), prev) < (len(el.display), el.display)


@given(st.integers(1, 20))
def test_associativity_exhaustive_small_windows(bound):
    for kind in (ADDITIVE, MULTIPLICATIVE):
        assert check_associative(make_window(kind, bound))


def test_associativity_words_sampled():
    assert check_associative(make_window(FREE_WORDS, 4, ["a", "b"]))


@given(st.integers(1, 40), st.data())
def test_overflow_monotone_numeric(bound, data):
    for kind in (ADDITIVE, MULTIPLICATIVE):
        w = make_window(kind, bound)
        lo = 0 if kind == ADDITIVE else 1
        x = data.draw(st.integers(lo, bound))
        y = data.draw(st.integers(lo, bound))
        if w.op_payload(x, y) is None:
            x2 = data.draw(st.integers(x, bound))
            y2 = data.draw(st.integers(y, bound))
            assert w.op_payload(x2, y2) is None


def test_table_window_and_identity():
    w = make_table_window(list(range(6)), lambda x, y: max(x, y))
    assert w.identity_enc == 0  # max(0, x) = x
    assert w.op_payload(3, 5) == 5
    with pytest.raises(InputError):
        make_table_window([0, 1], lambda x, y: (x - y) % 2
                          if x else (x + y + 1) % 2)  # not associative


def test_ground_set_explicit_and_predicate():
    w = make_window(ADDITIVE, 30)
    ev = GroundSet.from_predicate(w, lambda v: v % 2 == 0, "evens")
    assert [e.display for e in elements(ev, 3)] == ["0", "2", "4"]
    ex = GroundSet.from_values(w, [5, 7, 9])
    assert [e.display for e in elements(ex, 10)] == ["5", "7", "9"]
    sq = GroundSet.from_predicate(w, lambda v: int(v ** 0.5 + 0.5) ** 2 == v)
    assert [int(e.display) for e in elements(sq, 100)] == [0, 1, 4, 9, 16, 25]


def test_membership_outside_window_rejected():
    w = make_window(ADDITIVE, 10)
    ev = GroundSet.from_predicate(w, lambda v: v % 2 == 0)
    with pytest.raises(InputError):
        ev.contains_value(11)
    with pytest.raises(InputError):
        ev.contains_enc(99)


@given(st.sets(st.integers(0, 40), max_size=15),
       st.sets(st.integers(0, 40), max_size=15))
def test_set_algebra_matches_python_sets(xs, ys):
    w = make_window(ADDITIVE, 40)
    a = GroundSet.from_values(w, xs)
    b = GroundSet.from_values(w, ys)
    assert set(a.union(b).values()) == xs | ys
    assert set(a.intersect(b).values()) == xs & ys
    assert a.count() == len(xs)


def test_builtin_predicates():
    w = make_window(ADDITIVE, 30)
    cases = {
        "evens": {v for v in range(31) if v % 2 == 0},
        "odds": {v for v in range(31) if v % 2 == 1},
        "multiples:3": {v for v in range(31) if v % 3 == 0},
        "squares": {0, 1, 4, 9, 16, 25},
        "primes": {2, 3, 5, 7, 11, 13, 17, 19, 23, 29},
        "interval:10:14": {10, 11, 12, 13, 14},
        "union(squares,interval:28:30)": {0, 1, 4, 9, 16, 25, 28, 29, 30},
        "intersect(evens,multiples:3)": {v for v in range(31) if v % 6 == 0},
        "union(intersect(evens,interval:0:10),multiples:13)":
            {0, 2, 4, 6, 8, 10, 13, 26},
    }
    for spec, expected in cases.items():
        got = set(GroundSet.from_predicate(w, parse_predicate(spec)).values())
        assert got == expected, spec
    with pytest.raises(InputError):
        parse_predicate("nonsense:1")


def test_predicate_memoization_is_consistent():
    w = make_window(ADDITIVE, 50)
    calls = []

    def pred(v):
        calls.append(v)
        return v % 5 == 0

    g = GroundSet.from_predicate(w, pred)
    assert g.contains_value(10)
    first = len(calls)
    assert g.contains_value(10) and g.contains_value(7) is False
    assert len(calls) == first  # memoized up to 10 already
