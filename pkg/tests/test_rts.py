"""System container: relations, reachable sets, successors, validation."""

import pytest

from rmc import (
    AlphabetMismatch,
    MissingRelation,
    Rts,
    SuccessorCapExceeded,
    identity,
    universal_automaton,
)
from support import A, AB, mk_t, words_nfa

# a* -> shift the single marked cell right: ab -> ba is NOT in it, this
# moves a single b marker right through a field of a's.
SHIFT = mk_t(
    AB,
    AB,
    [
        ("l", "a/a", "l"),
        ("l", "b/a", "m"),
        ("m", "a/b", "r"),
        ("r", "a/a", "r"),
    ],
    ["l"],
    ["r"],
)


def shift_rts():
    initial = words_nfa(AB, {("b", "a", "a")})
    return Rts(initial, SHIFT)


def test_alphabet_guards():
    with pytest.raises(AlphabetMismatch):
        Rts(words_nfa(A, {("a",)}), SHIFT)
    mixed = mk_t(AB, A, [("s", "a/a", "s")], ["s"], ["s"])
    with pytest.raises(AlphabetMismatch):
        Rts(words_nfa(A, {("a",)}), mixed)


def test_relation_selection():
    rts = shift_rts()
    with pytest.raises(MissingRelation):
        rts.relation("exact")
    with pytest.raises(ValueError):
        rts.relation("sideways")
    with_reach = Rts(rts.initial, rts.delta, reach=identity(AB))
    assert with_reach.relation("exact") is with_reach.reach


def test_successors_ordering_and_cap():
    rts = shift_rts()
    words, truncated = rts.successors(("b", "a", "a"))
    assert words == (("a", "b", "a"),)
    assert not truncated
    words, truncated = rts.successors(("a", "a", "b"))
    assert words == ()
    noisy = Rts(
        words_nfa(AB, {("a",)}),
        mk_t(AB, AB, [("s", "a/a", "t"), ("s", "a/b", "t")], ["s"], ["t"]),
    )
    words, truncated = noisy.successors(("a",), cap=1)
    assert truncated and len(words) == 1
    with pytest.raises(SuccessorCapExceeded):
        from rmc.oracle import SimulationConfig, simulate

        simulate(noisy, ("a",), SimulationConfig(runs=1, max_steps=2, successor_cap=1))


def test_reachable_set_and_terminating():
    reach = mk_t(
        AB,
        AB,
        [
            ("i", "a/a", "i"),
            ("i", "b/b", "i"),
            ("i", "b/a", "j"),
            ("j", "a/a", "j"),
            ("j", "a/b", "k"),
            ("j", "a/a", "k"),
            ("k", "a/a", "k"),
        ],
        ["i"],
        ["i", "k"],
    )
    rts = Rts(shift_rts().initial, SHIFT, reach=reach)
    reachable = rts.reachable_set()
    assert reachable.accepts(("b", "a", "a"))
    assert reachable.accepts(("a", "b", "a"))
    assert reachable.accepts(("a", "a", "b"))
    assert not reachable.accepts(("b", "b", "a"))
    halted = rts.terminating()
    assert halted.accepts(("a", "a", "b"))
    assert halted.accepts(("a",))
    assert not halted.accepts(("b", "a"))


def test_validate_flags_missing_identity():
    rts = Rts(shift_rts().initial, SHIFT, reach=SHIFT)
    report = rts.validate()
    assert not report.ok
    names = {c.name for c in report.failed}
    assert "identity-within-reach" in names


def test_validate_passes_on_identity_closure():
    # For a delta with no steps at all, the identity is a correct reach.
    empty_delta = mk_t(AB, AB, [("s", "a/a", "s")], ["s"], [])
    rts = Rts(universal_automaton(AB), empty_delta, reach=identity(AB))
    assert rts.validate().ok
