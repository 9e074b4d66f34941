"""Constraint-based abstraction over a supplied potential-reachability relation.

An interpretation reads a constraint word on its top track and produces
the configurations satisfying the constraint on its bottom track, so one
finite word can stand for an infinite set of configurations.  Inductive
constraints are closed under the step relation and therefore certify
non-reachability.  The potential-reachability relation is consumed as
input and validated, never synthesized here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .alphabet import Word, unconvolve
from .errors import AlphabetMismatch, DeterminismViolation, MissingRelation
from .nfa import Nfa, universal_automaton, word_automaton
from .procedures import _locate, check_egf
from .rts import CheckResult, PropertyGoal, Rts, ValidationReport
from .transducer import Transducer, identity
from .verdict import Verdict, fails, holds


@dataclass(frozen=True)
class Interpretation:
    """A deterministic transducer from constraint words to configurations."""

    transducer: Transducer

    def __post_init__(self):
        if not self.transducer.is_deterministic():
            raise DeterminismViolation(
                "an interpretation needs a deterministic transducer"
            )
        self.transducer.validate_padding()

    @property
    def constraint_alphabet(self):
        return self.transducer.top

    @property
    def configuration_alphabet(self):
        return self.transducer.bottom


def constraint_set(interp: Interpretation, constraint: Word) -> Nfa:
    """The configurations the constraint word stands for."""
    source = word_automaton(interp.constraint_alphabet, constraint)
    return interp.transducer.post_image(source)


def is_inductive(
    rts: Rts, interp: Interpretation, constraint: Word
) -> tuple[bool, tuple[Word, Word] | None]:
    """Is the constraint's configuration set closed under the step
    relation?  On failure returns a step (c, c') leaving the set."""
    satisfying = constraint_set(interp, constraint)
    stepped = rts.delta.post_image(satisfying)
    ok, escape = satisfying.includes(stepped)
    if ok:
        return True, None
    inside = rts.delta.pre_image(
        word_automaton(rts.alphabet, escape)
    ).intersect(satisfying)
    return False, (inside.shortest_word(), escape)


def separates(
    interp: Interpretation, constraint: Word, config: Word, other: Word
) -> bool:
    """Does the constraint contain ``config`` but not ``other``?"""
    satisfying = constraint_set(interp, constraint)
    return satisfying.accepts(config) and not satisfying.accepts(other)


def certify_unreachable(
    rts: Rts, interp: Interpretation, constraint: Word, config: Word, other: Word
) -> bool:
    """True certifies that ``other`` is unreachable from ``config``: the
    constraint is closed under steps, contains the source, and omits the
    target."""
    inductive, _cex = is_inductive(rts, interp, constraint)
    return inductive and separates(interp, constraint, config, other)


def validate_preach(rts: Rts) -> ValidationReport:
    """Check the supplied potential-reachability relation is reflexive,
    transitive, and contains the step relation."""
    potential = rts.relation("potential")
    checks = []
    for name, smaller in (
        ("identity-within-preach", identity(rts.alphabet)),
        ("delta-within-preach", rts.delta),
        ("preach-transitive", potential.compose(potential)),
    ):
        ok, cex = potential.includes(smaller)
        checks.append(
            CheckResult(name, ok, None if cex is None else unconvolve(cex))
        )
    return ValidationReport(tuple(checks))


def abstract_safety(rts: Rts, unsafe: Nfa) -> Verdict:
    """Is every potentially reachable configuration outside ``unsafe``?
    Holds soundly implies the concrete system never reaches ``unsafe``."""
    if unsafe.alphabet != rts.alphabet:
        raise AlphabetMismatch("unsafe language alphabet differs from the system")
    found = rts.reachable_set("potential").intersect(unsafe).shortest_word()
    if found is None:
        return holds(note="no unsafe configuration is potentially reachable")
    return fails(
        witness=_locate(rts, found, "potential"),
        note="an unsafe configuration is potentially reachable",
    )


def exists_infinite_potential_run(rts: Rts) -> Verdict:
    """Can the system run forever when steps may be potential hops?"""
    return check_egf(rts, universal_automaton(rts.alphabet), basis="potential")


def abstract_sure_termination(rts: Rts) -> Verdict:
    """Holds when no infinite potential run exists, which soundly implies
    every concrete run is finite."""
    endless = exists_infinite_potential_run(rts)
    if endless.holds:
        return fails(
            witness=endless.witness,
            note="an infinite potential run exists; the concrete system may "
            "or may not terminate",
        )
    return holds(note="no infinite potential run exists")


def abstract_liveness(rts: Rts, goal: Nfa) -> Verdict:
    """Does some potential run visit the goal infinitely often?"""
    return check_egf(rts, goal, basis="potential")


def abstract_as_liveness(rts: Rts, goal: PropertyGoal) -> Verdict:
    """Certify almost-sure repeated reachability through the abstraction.

    Needs the exact pre-image of the goal as an input, alongside the
    potential-reachability relation.  Holds proves the concrete property;
    Fails only means the abstraction is inconclusive, and the note says
    so.
    """
    if goal.pre_of_goal is None:
        raise MissingRelation(
            "abstract almost-sure liveness needs the goal's pre-image set"
        )
    can_step = rts.delta.project(1)
    target = can_step.intersect(goal.pre_of_goal)
    ok, escape = target.includes(rts.reachable_set("potential"))
    if ok:
        return holds(
            note="every potentially reachable configuration can step and can "
            "reach the goal, so the concrete system visits the goal "
            "infinitely often almost surely"
        )
    return fails(
        witness=_locate(rts, escape, "potential"),
        note="abstraction inconclusive: a potentially reachable configuration "
        "either has no successor or lies outside the supplied goal "
        "pre-image; the concrete property itself may still hold either way",
    )
