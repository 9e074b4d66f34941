"""Regular transition systems: an initial language plus a step relation.

An :class:`Rts` bundles the initial-configuration NFA with the transition
transducer and, optionally, transducers for the reachability relation
(``reach``) and a reflexive-transitive overapproximation (``preach``).
Both relations are consumed as inputs, never computed: the toolkit checks
necessary conditions on them (see :meth:`Rts.validate`) but cannot verify
that a claimed ``reach`` is complete.
"""

from __future__ import annotations

from dataclasses import dataclass

from .alphabet import Alphabet, Word, unconvolve
from .errors import AlphabetMismatch, MissingRelation
from .nfa import Nfa, universal_automaton, word_automaton
from .transducer import Transducer, identity


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    counterexample: tuple[Word, ...] | None = None


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failed(self) -> tuple[CheckResult, ...]:
        return tuple(c for c in self.checks if not c.passed)


@dataclass(frozen=True)
class PropertyGoal:
    """A goal language, optionally with a caller-supplied pre-image.

    ``pre_of_goal`` names the set of configurations claimed to reach the
    goal; checks that need it treat it as an input in the same way reach
    and preach are inputs.
    """

    goal: Nfa
    pre_of_goal: Nfa | None = None


class Rts:
    """Initial language, step transducer, optional reachability relations."""

    DEFAULT_SUCCESSOR_CAP = 4096

    def __init__(
        self,
        initial: Nfa,
        delta: Transducer,
        reach: Transducer | None = None,
        preach: Transducer | None = None,
    ):
        if delta.top != delta.bottom:
            raise AlphabetMismatch("step transducer must relate words over one alphabet")
        if initial.alphabet != delta.top:
            raise AlphabetMismatch("initial language alphabet differs from the step relation")
        for rel, name in ((reach, "reach"), (preach, "preach")):
            if rel is not None and (rel.top != delta.top or rel.bottom != delta.top):
                raise AlphabetMismatch(f"{name} relation alphabet differs from the step relation")
        self.initial = initial
        self.delta = delta
        self.reach = reach
        self.preach = preach
        self.length_preserving = delta.is_length_preserving()
        self._cache: dict = {}

    @property
    def alphabet(self) -> Alphabet:
        return self.delta.top

    def relation(self, basis: str) -> Transducer:
        """The reach ("exact") or preach ("potential") relation, or raise."""
        if basis == "exact":
            if self.reach is None:
                raise MissingRelation("this check needs the reach relation")
            return self.reach
        if basis == "potential":
            if self.preach is None:
                raise MissingRelation("this check needs the preach relation")
            return self.preach
        raise ValueError(f"basis must be 'exact' or 'potential', got {basis!r}")

    def reachable_set(self, basis: str = "exact") -> Nfa:
        """Image of the initial language under the chosen relation (cached)."""
        key = ("reachable", basis)
        if key not in self._cache:
            self._cache[key] = self.relation(basis).post_image(self.initial)
        return self._cache[key]

    def terminating(self, cap: int | None = None) -> Nfa:
        """Configurations with no successor: the complement of dom(delta).

        Materialized by one subset construction and cached; ``cap`` bounds
        the construction.
        """
        key = ("terminating", cap)
        if key not in self._cache:
            has_successor = self.delta.pre_image(universal_automaton(self.alphabet))
            self._cache[key] = has_successor.complement(cap)
        return self._cache[key]

    def successors(self, config: Word, cap: int | None = None) -> tuple[tuple[Word, ...], bool]:
        """Direct successors in shortest-then-alphabet order.

        Returns ``(words, truncated)``; ``truncated`` reports that more
        than ``cap`` successors exist.
        """
        cap = self.DEFAULT_SUCCESSOR_CAP if cap is None else cap
        self.alphabet.check_word(config)
        post = self.delta.post_image(word_automaton(self.alphabet, config))
        words, truncated = post.enumerate_words(cap)
        return tuple(words), truncated

    def validate(self) -> ValidationReport:
        """Necessary structural checks; cannot prove a reach relation complete.

        Verifies padding validity of every transducer, that a
        length-preserving system has a length-preserving reach, and that a
        supplied reach contains both the identity and the step relation.
        """
        checks: list[CheckResult] = []

        def padding_check(name: str, t: Transducer | None):
            if t is None:
                return
            try:
                t.validate_padding()
                checks.append(CheckResult(f"{name}-padding", True))
            except Exception:
                checks.append(CheckResult(f"{name}-padding", False))

        padding_check("delta", self.delta)
        padding_check("reach", self.reach)
        padding_check("preach", self.preach)

        if self.reach is not None and self.length_preserving:
            checks.append(
                CheckResult("reach-length-preserving", self.reach.is_length_preserving())
            )

        if self.reach is not None:
            ident = identity(self.alphabet)
            ok, cex = self.reach.includes(ident)
            checks.append(
                CheckResult(
                    "identity-within-reach", ok, None if ok else unconvolve(cex)
                )
            )
            ok, cex = self.reach.includes(self.delta)
            checks.append(
                CheckResult("delta-within-reach", ok, None if ok else unconvolve(cex))
            )
        return ValidationReport(tuple(checks))


def validate(rts: Rts) -> ValidationReport:
    return rts.validate()
