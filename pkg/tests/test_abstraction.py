import random

import pytest

from rmc import (
    AlphabetMismatch,
    Alphabet,
    DeterminismViolation,
    Interpretation,
    MissingRelation,
    PropertyGoal,
    Rts,
    abstract_as_liveness,
    abstract_liveness,
    abstract_safety,
    abstract_sure_termination,
    certify_unreachable,
    constraint_set,
    exists_infinite_potential_run,
    identity,
    is_inductive,
    separates,
    slice_closure,
    validate_preach,
)
from rmc.oracle import build_slice, oracle_check
from support import AB, ABC, mk_t, random_lp_rts, words_nfa

C = Alphabet(["c"])


def toggle_rts(preach=None):
    delta = mk_t(AB, AB, [("s", "a/b", "t")], ["s"], ["t"])
    closure = mk_t(
        AB,
        AB,
        [("d", "a/a", "d"), ("d", "b/b", "d"), ("e", "a/b", "f")],
        ["d", "e"],
        ["d", "f"],
    )
    if preach is None:
        preach = closure
    return Rts(words_nfa(AB, {("a",)}), delta, reach=closure, preach=preach)


def spin_rts():
    delta = mk_t(AB, AB, [("s", "a/b", "t"), ("s", "b/a", "t")], ["s"], ["t"])
    closure = mk_t(
        AB,
        AB,
        [("d", "a/a", "d"), ("d", "b/b", "d"), ("e", "a/b", "f"), ("e", "b/a", "f")],
        ["d", "e"],
        ["d", "f"],
    )
    return Rts(words_nfa(AB, {("a",)}), delta, reach=closure, preach=closure)


def any_cells():
    """Constraint c^n stands for every configuration of length n."""
    return Interpretation(
        mk_t(C, AB, [("m", "c/a", "m"), ("m", "c/b", "m")], ["m"], ["m"])
    )


def only(letter):
    """Constraint c^n stands for the single configuration letter^n."""
    t = mk_t(C, AB, [("m", f"c/{letter}", "m")], ["m"], ["m"])
    return Interpretation(t)


def test_interpretation_rejects_nondeterminism():
    with pytest.raises(DeterminismViolation):
        Interpretation(
            mk_t(C, AB, [("m", "c/a", "m"), ("m", "c/a", "n")], ["m"], ["m", "n"])
        )


def test_constraint_set():
    sets = constraint_set(any_cells(), ("c", "c"))
    assert sets.accepts(("a", "b"))
    assert sets.accepts(("b", "b"))
    assert not sets.accepts(("a",))
    empty_constraint = constraint_set(any_cells(), ())
    assert empty_constraint.accepts(())


def test_is_inductive():
    rts = toggle_rts()
    ok, cex = is_inductive(rts, any_cells(), ("c",))
    assert ok and cex is None
    ok, cex = is_inductive(rts, only("a"), ("c",))
    assert not ok
    assert cex == (("a",), ("b",))
    # nothing steps out of {b}: the toggle only fires on a
    assert is_inductive(rts, only("b"), ("c",))[0]


def test_separates():
    interp = only("b")
    assert separates(interp, ("c",), ("b",), ("a",))
    assert not separates(interp, ("c",), ("a",), ("b",))
    assert not separates(interp, ("c",), ("b",), ("b",))


def test_certify_unreachable():
    rts = toggle_rts()
    assert certify_unreachable(rts, only("b"), ("c",), ("b",), ("a",))
    # {a} is not inductive, so it certifies nothing
    assert not certify_unreachable(rts, only("a"), ("c",), ("a",), ("b",))


def test_certified_pairs_agree_with_search():
    rng = random.Random(404)
    certified = 0
    for _ in range(40):
        rts, _goal = random_lp_rts(rng, max_length=3)
        interp = Interpretation(identity(rts.alphabet))
        for n in range(1, 3):
            sliced = build_slice(rts, n)
            closure = {
                (sliced.configurations[i], sliced.configurations[j])
                for i in range(len(sliced.configurations))
                for j in range(len(sliced.configurations))
            }
            reachable_pairs = slice_closure(sliced)
            for source, target in sorted(closure - reachable_pairs)[:3]:
                if certify_unreachable(rts, interp, source, source, target):
                    certified += 1
                    assert (source, target) not in reachable_pairs
    assert certified > 0


def test_validate_preach():
    report = validate_preach(toggle_rts())
    assert report.ok
    assert [c.name for c in report.checks] == [
        "identity-within-preach",
        "delta-within-preach",
        "preach-transitive",
    ]

    report = validate_preach(toggle_rts(preach=identity(AB)))
    assert not report.ok
    failed = {c.name: c for c in report.failed}
    assert failed.keys() == {"delta-within-preach"}
    assert failed["delta-within-preach"].counterexample == (("a",), ("b",))

    with pytest.raises(MissingRelation):
        validate_preach(Rts(words_nfa(AB, {("a",)}), toggle_rts().delta))


def test_abstract_safety():
    rts = toggle_rts()
    verdict = abstract_safety(rts, words_nfa(AB, {("b", "b")}))
    assert verdict.holds
    verdict = abstract_safety(rts, words_nfa(AB, {("b",)}))
    assert verdict.fails
    assert verdict.witness.kind == "path"
    assert verdict.witness.configurations[-1] == ("b",)
    with pytest.raises(AlphabetMismatch):
        abstract_safety(rts, words_nfa(ABC, {("c",)}))


def test_abstract_sure_termination():
    assert exists_infinite_potential_run(toggle_rts()).fails
    assert abstract_sure_termination(toggle_rts()).holds
    verdict = abstract_sure_termination(spin_rts())
    assert verdict.fails
    assert "infinite potential run" in verdict.note
    assert verdict.witness is not None


def test_abstract_liveness():
    assert abstract_liveness(spin_rts(), words_nfa(AB, {("b",)})).holds
    assert abstract_liveness(toggle_rts(), words_nfa(AB, {("b",)})).fails


def test_abstract_as_liveness():
    goal = PropertyGoal(
        words_nfa(AB, {("b",)}), pre_of_goal=words_nfa(AB, {("a",), ("b",)})
    )
    verdict = abstract_as_liveness(spin_rts(), goal)
    assert verdict.holds

    verdict = abstract_as_liveness(toggle_rts(), goal)
    assert verdict.fails
    assert verdict.note.startswith("abstraction inconclusive")
    assert verdict.witness.configurations[-1] == ("b",)

    with pytest.raises(MissingRelation):
        abstract_as_liveness(spin_rts(), PropertyGoal(words_nfa(AB, {("b",)})))


def test_abstract_as_liveness_matches_oracle():
    """When the certificate succeeds the exhaustive answer must agree."""
    rng = random.Random(19)
    confirmed = 0
    for _ in range(30):
        rts, goal = random_lp_rts(rng, max_length=3)
        pre = rts.relation("exact").pre_image(goal)
        verdict = abstract_as_liveness(rts, PropertyGoal(goal, pre_of_goal=pre))
        if not verdict.holds:
            continue
        for n in range(1, 4):
            sliced = build_slice(rts, n)
            assert oracle_check(sliced, "ASGF", goal)[0]
            confirmed += 1
    assert confirmed > 0
