"""Kernel operations checked against brute-force word enumeration."""

import random
from itertools import product

import pytest

from rmc import (
    AlphabetMismatch,
    Nfa,
    StateCapExceeded,
    SymbolNotInAlphabet,
    empty_automaton,
    length_automaton,
    universal_automaton,
    word_automaton,
)
from support import AB, ABC, mk_nfa, random_nfa, words_nfa


def all_words(alphabet, up_to):
    for n in range(up_to + 1):
        yield from product(alphabet.symbols, repeat=n)


def language(nfa, up_to=4):
    return {w for w in all_words(nfa.alphabet, up_to) if nfa.accepts(w)}


def test_accepts_basic():
    nfa = mk_nfa(AB, [("p", "a", "q"), ("q", "b", "q")], ["p"], ["q"])
    assert nfa.accepts(("a",))
    assert nfa.accepts(("a", "b", "b"))
    assert not nfa.accepts(())
    assert not nfa.accepts(("b",))
    with pytest.raises(SymbolNotInAlphabet):
        nfa.accepts(("z",))


def test_constructor_rejects_unknown_states():
    with pytest.raises(ValueError):
        Nfa(AB, ["p"], {("p", "a"): ("q",)}, ["p"], ["p"])
    with pytest.raises(ValueError):
        Nfa(AB, ["p"], {}, ["missing"], [])
    with pytest.raises(ValueError):
        Nfa(AB, ["p", "p"], {}, ["p"], [])


def test_union_intersect_complement_semantics():
    rng = random.Random(7)
    for _ in range(40):
        a = random_nfa(rng, AB, max_states=5)
        b = random_nfa(rng, AB, max_states=5)
        union = language(a) | language(b)
        inter = language(a) & language(b)
        assert language(a.union(b)) == union
        assert language(a.intersect(b)) == inter
        comp = a.complement()
        assert language(comp) == {w for w in all_words(AB, 4)} - language(a)


def test_state_bounds():
    rng = random.Random(11)
    for _ in range(40):
        a = random_nfa(rng, ABC, max_states=8)
        b = random_nfa(rng, ABC, max_states=8)
        assert len(a.union(b).states) <= len(a.states) + len(b.states)
        assert len(a.intersect(b).states) <= len(a.states) * len(b.states)
        assert len(a.complement().states) <= 2 ** len(a.states)


def test_alphabet_mismatch_raises():
    a = universal_automaton(AB)
    b = universal_automaton(ABC)
    with pytest.raises(AlphabetMismatch):
        a.union(b)
    with pytest.raises(AlphabetMismatch):
        a.intersect(b)


def test_complement_cap():
    # A classic exponential case: second symbol from the end is an a.
    nfa = mk_nfa(
        AB,
        [("s", "a", "s"), ("s", "b", "s"), ("s", "a", "t"), ("t", "a", "u"), ("t", "b", "u")],
        ["s"],
        ["u"],
    )
    with pytest.raises(StateCapExceeded):
        nfa.complement(cap=2)
    assert not nfa.complement().accepts(("a", "b"))
    assert nfa.complement().accepts(("b", "a"))


def test_includes_finds_shortest_counterexample():
    small = words_nfa(AB, {("a",), ("a", "b")})
    big = words_nfa(AB, {("a",), ("a", "b"), ("b",)})
    ok, cex = big.includes(small)
    assert ok and cex is None
    ok, cex = small.includes(big)
    assert not ok
    assert cex == ("b",)


def test_includes_random_agreement():
    rng = random.Random(23)
    for _ in range(30):
        a = random_nfa(rng, AB, max_states=5)
        b = random_nfa(rng, AB, max_states=5)
        ok, cex = a.includes(b)
        if ok:
            assert language(b) <= language(a)
        else:
            assert b.accepts(cex) and not a.accepts(cex)


def test_shortest_word_order():
    nfa = words_nfa(ABC, {("b",), ("a", "c"), ("a", "a")})
    assert nfa.shortest_word() == ("b",)
    tie = words_nfa(ABC, {("b", "a"), ("a", "c")})
    # Same length: alphabet order breaks the tie.
    assert tie.shortest_word() == ("a", "c")
    assert empty_automaton(ABC).shortest_word() is None


def test_enumerate_words():
    nfa = words_nfa(AB, {(), ("b",), ("a", "a")})
    words, truncated = nfa.enumerate_words(10)
    assert words == [(), ("b",), ("a", "a")]
    assert not truncated
    words, truncated = universal_automaton(AB).enumerate_words(4)
    assert truncated
    assert words == [(), ("a",), ("b",), ("a", "a")]


def test_trim_preserves_language():
    rng = random.Random(3)
    for _ in range(30):
        nfa = random_nfa(rng, AB, max_states=6)
        trimmed = nfa.trim()
        assert language(trimmed) == language(nfa)
        assert len(trimmed.states) <= len(nfa.states)


def test_word_length_universal_helpers():
    w = word_automaton(ABC, ("a", "c"))
    assert language(w) == {("a", "c")}
    assert language(length_automaton(AB, 2)) == {p for p in all_words(AB, 2) if len(p) == 2}
    assert language(length_automaton(AB, 2, upto=True)) == {
        p for p in all_words(AB, 2)
    }
    assert empty_automaton(AB).is_empty()
    assert not universal_automaton(AB).is_empty()


def test_is_deterministic():
    det = mk_nfa(AB, [("p", "a", "q"), ("p", "b", "p")], ["p"], ["q"])
    assert det.is_deterministic()
    nondet = mk_nfa(AB, [("p", "a", "q"), ("p", "a", "p")], ["p"], ["q"])
    assert not nondet.is_deterministic()
    two_initial = mk_nfa(AB, [("p", "a", "q")], ["p", "q"], ["q"])
    assert not two_initial.is_deterministic()
