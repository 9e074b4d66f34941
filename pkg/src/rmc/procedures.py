"""Decision procedures over transducer-described transition systems.

The symbolic checks work on the system's reachability relation and never
enumerate configurations; the bounded checks slice the system per word
length up to a bound and answer Unknown when the bound cannot be shown
exhaustive.  All of them return a Verdict whose witness, when present,
names concrete configurations.

Witness step granularity differs by route: bounded checks produce
single-step witnesses replayable against the step relation, while the
cycle route of the repeated-reachability check produces witnesses whose
hops are reachability-relation hops; each verdict's note says which.
"""

from __future__ import annotations

from .alphabet import Word
from .errors import AlphabetMismatch, NotLengthPreserving
from .nfa import Nfa, constrained_search, length_automaton, word_automaton
from .oracle import _bfs, _path_to, _tarjan, build_slice, oracle_check
from .rts import Rts
from .transducer import (
    Transducer,
    diagonal,
    identity_on,
    relation_difference_identity,
    universal,
)
from .verdict import Verdict, Witness, fails, holds, unknown

DEFAULT_BOUND = 8

_WITNESS_SLICE_CAP = 65536

PROPERTY_CHECKS = (
    "ef",
    "egf",
    "egf-loop",
    "egf-clique",
    "af",
    "agf",
    "as-f",
    "as-gf",
    "as-term",
    "deadlock-free",
)

_NEEDS_GOAL = frozenset(
    ("ef", "egf", "egf-loop", "egf-clique", "af", "agf", "as-f", "as-gf")
)


def _check_goal(rts: Rts, goal: Nfa) -> None:
    if goal.alphabet != rts.alphabet:
        raise AlphabetMismatch("goal alphabet differs from the system alphabet")


def _locate(rts: Rts, target: Word, basis: str) -> Witness:
    """A witness that ``target`` is reachable: a stepwise path when a
    slice of its length is affordable, else a source/target pair under
    the reachability relation."""
    if rts.length_preserving and len(rts.alphabet) ** len(target) <= _WITNESS_SLICE_CAP:
        slice_ = build_slice(rts, len(target), config_cap=_WITNESS_SLICE_CAP)
        index = slice_.index_of(target)
        _order, parents = _bfs(slice_, slice_.initial)
        if index in parents:
            nodes = _path_to(parents, index)
            return Witness(
                "path", tuple(slice_.configurations[i] for i in nodes)
            )
    relation = rts.relation(basis)
    sources = relation.pre_image(word_automaton(rts.alphabet, target)).intersect(
        rts.initial
    )
    source = sources.shortest_word()
    if source is None:
        # the relation claims reachability yet names no initial source;
        # fall back to the target alone
        return Witness("path", (target,))
    return Witness("pair", (source, target))


# -- reachability ---------------------------------------------------------------


def check_ef(rts: Rts, goal: Nfa, basis: str = "exact") -> Verdict:
    """Is some goal configuration reachable from the initial set?"""
    _check_goal(rts, goal)
    found = rts.reachable_set(basis).intersect(goal).shortest_word()
    if found is None:
        return fails(note="no goal configuration in the reachable set")
    if basis == "potential":
        return unknown(
            note="the potential-reachability relation cannot confirm reachability"
        )
    return holds(witness=_locate(rts, found, basis))


def check_deadlock_freedom(rts: Rts, basis: str = "exact") -> Verdict:
    """Does every reachable configuration have at least one successor?"""
    domain = rts.delta.project(1)
    found = constrained_search(
        rts.reachable_set(basis),
        [domain],
        lambda pos_final, hits: pos_final and not hits[0],
    )
    if found is None:
        return holds(note="every reachable configuration has a successor")
    return fails(
        witness=_locate(rts, found, basis),
        note="a reachable configuration has no successor",
    )


# -- repeated reachability -------------------------------------------------------


def check_egf_loop(rts: Rts, goal: Nfa, basis: str = "exact") -> Verdict:
    """Cycle route: find a reachable goal configuration on a cycle.

    A configuration revisits itself either through a single self-step or
    through some distinct intermediate configuration, so two diagonals
    cover all cycles.  Complete on its own for length-preserving systems,
    where any infinite run stays inside one finite length class.
    """
    _check_goal(rts, goal)
    reachable_goal = rts.reachable_set(basis).intersect(goal)
    self_stepping = reachable_goal.intersect(diagonal(rts.delta))
    config = self_stepping.shortest_word()
    if config is not None:
        return holds(
            witness=Witness("lasso", (config,), loop_start=0),
            note="the loop is a single step of the system",
        )
    relation = rts.relation(basis)
    strict = relation_difference_identity(relation)
    round_trip = diagonal(strict.compose(strict))
    config = reachable_goal.intersect(round_trip).shortest_word()
    if config is not None:
        here = word_automaton(rts.alphabet, config)
        other = strict.post_image(here).intersect(strict.pre_image(here))
        via = other.shortest_word()
        return holds(
            witness=Witness("lasso", (config, via), loop_start=0),
            note="loop steps are reachability-relation hops",
        )
    return fails(note="no reachable goal configuration lies on a cycle")


def _pair_index(t: Transducer):
    real: dict = {}
    pad_bottom: dict = {}
    for (q, sym), dsts in t.transitions.items():
        if sym.top == "#":
            pad_bottom.setdefault((q, sym.bottom), []).extend(dsts)
        elif sym.bottom != "#":
            real.setdefault((q, sym.top, sym.bottom), []).extend(dsts)
    return real, pad_bottom


def check_egf_clique(rts: Rts, goal: Nfa, basis: str = "exact") -> Verdict:
    """Growth route: find an endless chain of ever-longer configurations,
    each reachable from the one before it and landing in the goal.

    The chain is presented as a comb: a growing common prefix with a
    divergent tail per element.  The route only looks for combs whose
    prefix and tail grow in lockstep, so it can miss chains that exist
    in some other shape; a Fails verdict means no comb of this shape was
    found.  Length-preserving systems have no growing chains at all, so
    they fail this route immediately.
    """
    _check_goal(rts, goal)
    if rts.length_preserving:
        return fails(
            note="the growth route does not apply to length-preserving systems"
        )
    relation = rts.relation(basis)
    sigma = rts.alphabet
    into_goal = universal(sigma, sigma).compose(identity_on(goal))
    chain = relation.intersect(into_goal).trim()
    if chain.is_empty():
        return fails(note="no reachability pair lands in the goal")
    reach_lang = rts.reachable_set(basis).trim()
    if not reach_lang.states:
        return fails(note="the reachable set is empty")

    real, pad_bottom = _pair_index(chain)
    final = chain.final
    symbols = sigma.symbols

    reach_step: dict = {}
    for (q, sym), dsts in reach_lang.transitions.items():
        reach_step.setdefault((q, sym), []).extend(dsts)

    # stage-one exploration: read a reachable word on the top track while
    # running the chain relation against a same-length prospective prefix
    # on the bottom track, and the prefix against itself diagonally
    triple_parents: dict = {}
    queue: list = []
    for s in reach_lang.initial:
        for b in chain.initial:
            for c in chain.initial:
                state = (s, b, c)
                if state not in triple_parents:
                    triple_parents[state] = (None, None)
                    queue.append(state)
    entry_nodes: dict = {}
    head = 0
    while head < len(queue):
        s, b, c = queue[head]
        head += 1
        if s in reach_lang.final:
            entry_nodes.setdefault((b, c), (s, b, c))
        for x in symbols:
            s_next = reach_step.get((s, x))
            if not s_next:
                continue
            for y in symbols:
                b_next = real.get((b, x, y))
                if not b_next:
                    continue
                c_next = real.get((c, y, y))
                if not c_next:
                    continue
                for s2 in s_next:
                    for b2 in b_next:
                        for c2 in c_next:
                            state = (s2, b2, c2)
                            if state not in triple_parents:
                                triple_parents[state] = ((s, b, c), (x, y))
                                queue.append(state)

    if not entry_nodes:
        return fails(note="no reachable configuration starts a comb")

    def edges_from(node):
        q1, q2 = node
        start = (q1, q2, q2)
        parents = {start: (None, None)}
        frontier = [start]
        out: dict = {}
        head = 0
        while head < len(frontier):
            source = frontier[head]
            a, b, c = source
            head += 1
            for x in symbols:
                a_next = pad_bottom.get((a, x))
                if not a_next:
                    continue
                for y in symbols:
                    b_next = real.get((b, x, y))
                    if not b_next:
                        continue
                    c_next = real.get((c, y, y))
                    if not c_next:
                        continue
                    for a2 in a_next:
                        for b2 in b_next:
                            for c2 in c_next:
                                state = (a2, b2, c2)
                                if a2 in final and (b2, c2) not in out:
                                    xs = [x]
                                    ys = [y]
                                    cursor = source
                                    while parents[cursor][0] is not None:
                                        cursor, letters = parents[cursor]
                                        xs.append(letters[0])
                                        ys.append(letters[1])
                                    xs.reverse()
                                    ys.reverse()
                                    out[(b2, c2)] = (tuple(xs), tuple(ys))
                                if state not in parents:
                                    parents[state] = (source, (x, y))
                                    frontier.append(state)
        return out

    # stage two: saturate the comb graph from the entry nodes
    graph: dict = {}
    pending = sorted(entry_nodes)
    seen = set(pending)
    while pending:
        node = pending.pop()
        labelled = edges_from(node)
        graph[node] = labelled
        for target in labelled:
            if target not in seen:
                seen.add(target)
                pending.append(target)

    nodes = sorted(graph)
    position = {node: i for i, node in enumerate(nodes)}
    adjacency = [
        sorted(position[t] for t in graph[node]) for node in nodes
    ]
    sccs, scc_of = _tarjan(len(nodes), adjacency)
    cyclic = {
        si
        for si, members in enumerate(sccs)
        if len(members) > 1 or members[0] in adjacency[members[0]]
    }
    if not cyclic:
        return fails(note="no comb of reachable configurations can grow forever")

    # shortest node path from an entry node into a cyclic component
    node_parents: dict = {}
    order: list = []
    for node in sorted(entry_nodes):
        node_parents[node] = None
        order.append(node)
    head = 0
    pivot = None
    while head < len(order):
        node = order[head]
        head += 1
        if scc_of[position[node]] in cyclic:
            pivot = node
            break
        for target in sorted(graph[node]):
            if target not in node_parents:
                node_parents[target] = node
                order.append(target)
    node_path = [pivot]
    while node_parents[node_path[-1]] is not None:
        node_path.append(node_parents[node_path[-1]])
    node_path.reverse()

    # one lap around the pivot's component, found backwards from the pivot
    component = {nodes[i] for i in sccs[scc_of[position[pivot]]]}
    lap_parents: dict = {}
    lap_order: list = []
    for target in sorted(graph[pivot]):
        if target in component and target not in lap_parents:
            lap_parents[target] = None
            lap_order.append(target)
    head = 0
    while lap_order[head] != pivot:
        node = lap_order[head]
        head += 1
        for target in sorted(graph[node]):
            if target in component and target not in lap_parents:
                lap_parents[target] = node
                lap_order.append(target)
    lap = [pivot]
    while lap_parents[lap[-1]] is not None:
        lap.append(lap_parents[lap[-1]])
    lap.reverse()

    labels = []
    for a, b in zip(node_path, node_path[1:]):
        labels.append(graph[a][b])
    previous = pivot
    for node in lap:
        labels.append(graph[previous][node])
        previous = node

    # decode the first configuration and prefix from the stage-one forest
    start_state = entry_nodes[node_path[0]]
    xs: list[str] = []
    ys: list[str] = []
    cursor = start_state
    while triple_parents[cursor][0] is not None:
        cursor, letters = triple_parents[cursor]
        xs.append(letters[0])
        ys.append(letters[1])
    xs.reverse()
    ys.reverse()
    configurations = [tuple(xs)]
    prefix = tuple(ys)
    for c_word, d_word in labels:
        configurations.append(prefix + c_word)
        prefix = prefix + d_word
    return holds(
        witness=Witness("clique-prefix", tuple(configurations)),
        note=(
            "each configuration reaches the next and every one after the"
            " first is in the goal; the comb keeps growing by pumping"
        ),
    )


def check_egf(rts: Rts, goal: Nfa, basis: str = "exact") -> Verdict:
    """Can some run visit the goal infinitely often?  Tries the cycle
    route first and the growth route second."""
    by_loop = check_egf_loop(rts, goal, basis)
    if by_loop.holds:
        return by_loop
    by_clique = check_egf_clique(rts, goal, basis)
    if by_clique.holds:
        return by_clique
    if rts.length_preserving:
        return by_loop
    return fails(note=f"{by_loop.note}; {by_clique.note}")


# -- almost-sure checks ----------------------------------------------------------


def check_as_gf(rts: Rts, goal: Nfa, basis: str = "exact") -> Verdict:
    """Does a random run visit the goal infinitely often with probability
    one?  Fails exactly when some reachable configuration either has no
    successor or cannot reach the goal at all."""
    _check_goal(rts, goal)
    domain = rts.delta.project(1)
    can_reach_goal = rts.relation(basis).pre_image(goal)
    found = constrained_search(
        rts.reachable_set(basis),
        [domain, can_reach_goal],
        lambda pos_final, hits: pos_final and (not hits[0] or not hits[1]),
    )
    if found is None:
        return holds(
            note="every reachable configuration can step and can reach the goal"
        )
    reason = (
        "a reachable configuration has no successor"
        if not domain.accepts(found)
        else "a reachable configuration cannot reach the goal"
    )
    return fails(witness=_locate(rts, found, basis), note=reason)


def check_as_termination(rts: Rts, basis: str = "exact") -> Verdict:
    """Does a random run reach a successor-free configuration with
    probability one?  Fails exactly when some reachable configuration
    cannot reach any successor-free one."""
    halted = rts.terminating()
    can_halt = rts.relation(basis).pre_image(halted)
    found = constrained_search(
        rts.reachable_set(basis),
        [can_halt],
        lambda pos_final, hits: pos_final and not hits[0],
    )
    if found is None:
        return holds(
            note="every reachable configuration can reach a successor-free one"
        )
    return fails(
        witness=_locate(rts, found, basis),
        note="a reachable configuration cannot reach any successor-free one",
    )


# -- bounded universal checks ----------------------------------------------------


def _initial_exhausted(rts: Rts, bound: int) -> bool:
    """True when no initial configuration is longer than the bound."""
    trimmed = rts.initial.trim()
    if not trimmed.states:
        return True
    outgoing: dict = {}
    incoming_count = {q: 0 for q in trimmed.states}
    for (src, _sym), dsts in trimmed.transitions.items():
        for dst in dsts:
            outgoing.setdefault(src, []).append(dst)
            incoming_count[dst] += 1
    ready = [q for q, count in incoming_count.items() if count == 0]
    longest = {q: 0 for q in trimmed.states}
    seen = 0
    while ready:
        q = ready.pop()
        seen += 1
        for dst in outgoing.get(q, ()):  # each edge adds one symbol
            if longest[q] + 1 > longest[dst]:
                longest[dst] = longest[q] + 1
            incoming_count[dst] -= 1
            if incoming_count[dst] == 0:
                ready.append(dst)
    if seen != len(trimmed.states):
        return False
    return max(longest[q] for q in trimmed.final) <= bound


def _replay(rts: Rts, witness: Witness) -> None:
    """Internal sanity check: witness steps must be real system steps."""
    configs = witness.configurations
    steps = list(zip(configs, configs[1:]))
    if witness.kind == "lasso":
        steps.append((configs[-1], configs[witness.loop_start]))
    for before, after in steps:
        if not rts.delta.accepts_pair(before, after):
            raise AssertionError(
                f"witness step {before} to {after} is not a system step"
            )


def _bounded(rts: Rts, prop: str, goal: Nfa | None, bound: int) -> Verdict:
    if not rts.length_preserving:
        raise NotLengthPreserving(
            "bounded checks slice the system per word length"
        )
    if goal is not None:
        _check_goal(rts, goal)
    for n in range(bound + 1):
        has_initial = not rts.initial.intersect(
            length_automaton(rts.alphabet, n)
        ).is_empty()
        if not has_initial:
            continue
        satisfied, witness = oracle_check(build_slice(rts, n), prop, goal)
        if not satisfied:
            _replay(rts, witness)
            return fails(witness=witness, bound=n)
    if _initial_exhausted(rts, bound):
        return holds(note=f"all initial configurations have length at most {bound}")
    return unknown(
        bound=bound,
        note="no violation up to the bound, but longer initial configurations exist",
    )


def check_af_bounded(rts: Rts, goal: Nfa, bound: int = DEFAULT_BOUND) -> Verdict:
    """Must every run reach the goal?  Checked per length up to the bound."""
    return _bounded(rts, "AF", goal, bound)


def check_agf_bounded(rts: Rts, goal: Nfa, bound: int = DEFAULT_BOUND) -> Verdict:
    """Must every run visit the goal infinitely often?  Checked per
    length up to the bound; only goal-avoiding cycles count against it."""
    return _bounded(rts, "AGF", goal, bound)


def check_as_f_bounded(rts: Rts, goal: Nfa, bound: int = DEFAULT_BOUND) -> Verdict:
    """Does a random run reach the goal with probability one?  Checked
    per length up to the bound."""
    return _bounded(rts, "ASF", goal, bound)


# -- dispatch --------------------------------------------------------------------


def run_check(
    rts: Rts,
    property_name: str,
    goal: Nfa | None = None,
    basis: str = "exact",
    bound: int = DEFAULT_BOUND,
) -> Verdict:
    """Dispatch a property check by name; the command line goes through
    here so the names are part of the interface."""
    name = property_name.lower()
    if name not in PROPERTY_CHECKS:
        raise ValueError(
            f"unknown property {property_name!r}; expected one of {PROPERTY_CHECKS}"
        )
    if name in _NEEDS_GOAL and goal is None:
        raise ValueError(f"property {name!r} needs a goal language")
    if name == "ef":
        return check_ef(rts, goal, basis)
    if name == "egf":
        return check_egf(rts, goal, basis)
    if name == "egf-loop":
        return check_egf_loop(rts, goal, basis)
    if name == "egf-clique":
        return check_egf_clique(rts, goal, basis)
    if name == "af":
        return check_af_bounded(rts, goal, bound)
    if name == "agf":
        return check_agf_bounded(rts, goal, bound)
    if name == "as-f":
        return check_as_f_bounded(rts, goal, bound)
    if name == "as-gf":
        return check_as_gf(rts, goal, basis)
    if name == "as-term":
        return check_as_termination(rts, basis)
    return check_deadlock_freedom(rts, basis)
