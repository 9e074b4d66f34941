"""Explicit-state oracle over fixed-length configuration slices.

A length-preserving system restricted to words of one length is a finite
graph, so every property the symbolic procedures decide can be recomputed
here by brute force: reachability, cycles, strongly connected components,
bottom SCCs, and seeded random walks.  The oracle exists to cross-check
the transducer-based procedures and to lift explicitly computed closures
back into transducer form.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .alphabet import Alphabet, Word, convolve
from .errors import CapExceeded, NotLengthPreserving, SuccessorCapExceeded
from .nfa import Nfa
from .rts import Rts
from .transducer import Transducer
from .verdict import Witness

PROPERTIES = ("EF", "EGF", "AF", "AGF", "ASF", "ASGF", "AST", "DF")

DEFAULT_CONFIG_CAP = 200_000


@dataclass(frozen=True)
class FiniteSlice:
    """All configurations of one length with their step edges."""

    length: int
    alphabet: Alphabet
    configurations: tuple[Word, ...]
    edges: tuple[tuple[int, ...], ...]
    initial: frozenset[int]
    sccs: tuple[tuple[int, ...], ...]
    scc_of: tuple[int, ...]
    bottom_sccs: frozenset[int]

    def index_of(self, config: Word) -> int:
        return self.configurations.index(config)

    def is_terminating(self, i: int) -> bool:
        return not self.edges[i]

    def is_trivial_bscc(self, scc_index: int) -> bool:
        """A trivial bottom SCC is a single terminating configuration."""
        members = self.sccs[scc_index]
        return len(members) == 1 and not self.edges[members[0]]


def _tarjan(n: int, edges: Sequence[Sequence[int]]):
    """Iterative Tarjan; SCCs come out sinks-first (reverse topological)."""
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    sccs: list[tuple[int, ...]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work: list[list[int]] = [[root, 0]]
        while work:
            frame = work[-1]
            v, ptr = frame
            if ptr == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            out = edges[v]
            while frame[1] < len(out):
                w = out[frame[1]]
                frame[1] += 1
                if index[w] == -1:
                    work.append([w, 0])
                    advanced = True
                    break
                if on_stack[w]:
                    if index[w] < low[v]:
                        low[v] = index[w]
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if low[v] < low[parent]:
                    low[parent] = low[v]
            if low[v] == index[v]:
                members = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    members.append(w)
                    if w == v:
                        break
                sccs.append(tuple(sorted(members)))
    scc_of = [0] * n
    for si, members in enumerate(sccs):
        for v in members:
            scc_of[v] = si
    return tuple(sccs), tuple(scc_of)


def _config_successors(delta: Transducer, coreach: set, config: Word) -> list[Word]:
    """Distinct same-length successors of one configuration, in symbol order.

    Runs the transducer along the fixed top track, branching on bottom
    symbols; prefixes whose state set cannot reach a final state are
    dropped early.
    """
    by_top: dict = {}
    # note: callers pass a trimmed transducer, so padded symbols never help here
    level: dict[Word, frozenset] = {(): frozenset(delta.initial)}
    for a in config:
        moves = by_top.get(a)
        if moves is None:
            moves = {}
            for (q, sym), dsts in delta.transitions.items():
                if sym.top == a:
                    moves.setdefault(q, []).append((sym.bottom, dsts))
            by_top[a] = moves
        nxt: dict[Word, set] = {}
        for prefix, states in level.items():
            for q in states:
                for b, dsts in moves.get(q, ()):
                    live = [r for r in dsts if r in coreach]
                    if live:
                        nxt.setdefault(prefix + (b,), set()).update(live)
        if not nxt:
            return []
        level = {w: frozenset(s) for w, s in nxt.items()}
    final = delta.final
    return [w for w, states in level.items() if states & final]


def build_slice(rts: Rts, length: int, config_cap: int = DEFAULT_CONFIG_CAP) -> FiniteSlice:
    """Materialize the slice of all configurations of the given length."""
    if not rts.length_preserving:
        raise NotLengthPreserving("slices are only defined for length-preserving systems")
    alphabet = rts.alphabet
    total = len(alphabet) ** length
    if total > config_cap:
        raise CapExceeded(
            f"slice would hold {total} configurations, above the cap of {config_cap}"
        )
    configurations = tuple(itertools.product(alphabet.symbols, repeat=length))
    index = {c: i for i, c in enumerate(configurations)}

    delta = rts.delta.trim()
    coreach = delta._coreachable()
    edges = []
    for c in configurations:
        succ = _config_successors(delta, coreach, c)
        edges.append(tuple(sorted(index[s] for s in succ)))
    edges = tuple(edges)

    initial = frozenset(i for i, c in enumerate(configurations) if rts.initial.accepts(c))
    sccs, scc_of = _tarjan(len(configurations), edges)
    bottom = set()
    for si, members in enumerate(sccs):
        inside = set(members)
        if all(t in inside for v in members for t in edges[v]):
            bottom.add(si)
    return FiniteSlice(
        length=length,
        alphabet=alphabet,
        configurations=configurations,
        edges=edges,
        initial=initial,
        sccs=sccs,
        scc_of=scc_of,
        bottom_sccs=frozenset(bottom),
    )


# -- graph helpers -------------------------------------------------------------


def _bfs(slice_: FiniteSlice, starts: Iterable[int], allowed=None):
    """Shortest-path forest from ``starts``; returns (order, parents).

    ``allowed`` optionally restricts both the start set and the nodes the
    search may enter.
    """
    parents: dict[int, int | None] = {}
    order: list[int] = []
    queue: deque[int] = deque()
    for s in sorted(starts):
        if allowed is not None and s not in allowed:
            continue
        if s not in parents:
            parents[s] = None
            order.append(s)
            queue.append(s)
    while queue:
        v = queue.popleft()
        for w in slice_.edges[v]:
            if allowed is not None and w not in allowed:
                continue
            if w not in parents:
                parents[w] = v
                order.append(w)
                queue.append(w)
    return order, parents


def _path_to(parents: dict, v: int) -> list[int]:
    path = [v]
    while parents[path[-1]] is not None:
        path.append(parents[path[-1]])
    path.reverse()
    return path


def _witness(slice_: FiniteSlice, nodes: Sequence[int], kind: str = "path", loop_start=None) -> Witness:
    return Witness(
        kind=kind,
        configurations=tuple(slice_.configurations[i] for i in nodes),
        loop_start=loop_start,
    )


def _cycle_search(slice_: FiniteSlice, starts: set, allowed: set):
    """Find a lasso inside ``allowed``: a path from ``starts`` to a cycle.

    Returns (path_nodes, loop_start) or None.  The cycle is witnessed by
    repeating its entry node at the end of the path.
    """
    order, parents = _bfs(slice_, starts, allowed)
    reachable = set(order)
    if not reachable:
        return None
    # restrict the graph to reachable-and-allowed nodes and look for a cycle
    nodes = sorted(reachable)
    local = {v: i for i, v in enumerate(nodes)}
    sub_edges = [
        [local[w] for w in slice_.edges[v] if w in reachable]
        for v in nodes
    ]
    sccs, _scc_of = _tarjan(len(nodes), sub_edges)
    for members in sccs:
        real = [nodes[i] for i in members]
        if len(real) > 1 or real[0] in slice_.edges[real[0]]:
            entry = min(real)
            prefix = _path_to(parents, entry)
            # close a cycle from entry back to entry inside the SCC
            # close the cycle but drop the repeated entry node: by convention
            # the last configuration of a lasso steps back to loop_start
            inside = set(real)
            _o, p2 = _bfs(slice_, slice_.edges[entry], inside)
            cycle = _path_to(p2, entry)[:-1] if entry in p2 else []
            return prefix + cycle, len(prefix) - 1
    return None


def oracle_check(
    slice_: FiniteSlice, property_name: str, goal: Nfa | None = None
) -> tuple[bool, Witness | None]:
    """Decide one qualitative property on a finite slice.

    Returns ``(answer, witness)``; the witness demonstrates an existential
    success or a universal counterexample, whichever applies.
    """
    prop = property_name.upper()
    if prop not in PROPERTIES:
        raise ValueError(f"unknown property {property_name!r}; expected one of {PROPERTIES}")
    needs_goal = prop not in ("AST", "DF")
    if needs_goal and goal is None:
        raise ValueError(f"property {prop} needs a goal language")
    if goal is not None and goal.alphabet != slice_.alphabet:
        raise ValueError("goal alphabet differs from the slice alphabet")

    n = len(slice_.configurations)
    in_goal = (
        frozenset(i for i, c in enumerate(slice_.configurations) if goal.accepts(c))
        if goal is not None
        else frozenset()
    )
    initial = slice_.initial

    if prop == "EF":
        order, parents = _bfs(slice_, initial)
        for v in order:
            if v in in_goal:
                return True, _witness(slice_, _path_to(parents, v))
        return False, None

    if prop == "EGF":
        order, parents = _bfs(slice_, initial)
        reachable = set(order)
        for g in sorted(in_goal):
            if g not in reachable:
                continue
            scc = slice_.sccs[slice_.scc_of[g]]
            if len(scc) > 1 or g in slice_.edges[g]:
                prefix = _path_to(parents, g)
                inside = set(scc)
                _o, p2 = _bfs(slice_, slice_.edges[g], inside)
                cycle = _path_to(p2, g)[:-1] if g in p2 else []
                return True, _witness(
                    slice_, prefix + cycle, kind="lasso", loop_start=len(prefix) - 1
                )
        return False, None

    if prop == "AF":
        avoid_ok = set(range(n)) - in_goal
        starts = set(initial) - in_goal
        # a maximal goal-free path ending in a terminating configuration
        order, parents = _bfs(slice_, starts, avoid_ok)
        for v in order:
            if slice_.is_terminating(v):
                return False, _witness(slice_, _path_to(parents, v))
        found = _cycle_search(slice_, starts, avoid_ok)
        if found is not None:
            nodes, loop_start = found
            return False, _witness(slice_, nodes, kind="lasso", loop_start=loop_start)
        return True, None

    if prop == "AGF":
        # only a reachable goal-avoiding cycle counts against repeated
        # reachability; runs that die out are judged by AST and ASGF instead
        avoid_ok = set(range(n)) - in_goal
        closure, closure_parents = _bfs(slice_, initial)
        starts = set(closure) - in_goal
        found = _cycle_search(slice_, starts, avoid_ok)
        if found is not None:
            nodes, loop_start = found
            stem = _path_to(closure_parents, nodes[0])
            full = stem + nodes[1:]
            return False, _witness(
                slice_, full, kind="lasso", loop_start=loop_start + len(stem) - 1
            )
        return True, None

    if prop == "ASF":
        avoid_ok = set(range(n)) - in_goal
        starts = set(initial) - in_goal
        order, parents = _bfs(slice_, starts, avoid_ok)
        goal_free_bottom = {
            si for si in slice_.bottom_sccs
            if not (set(slice_.sccs[si]) & in_goal)
        }
        for v in order:
            if slice_.scc_of[v] in goal_free_bottom:
                return False, _witness(slice_, _path_to(parents, v))
        return True, None

    if prop == "ASGF":
        order, parents = _bfs(slice_, initial)
        reachable = set(order)
        for si in sorted(slice_.bottom_sccs):
            members = set(slice_.sccs[si])
            if not (members & reachable):
                continue
            if slice_.is_trivial_bscc(si) or not (members & in_goal):
                entry = next(v for v in order if v in members)
                return False, _witness(slice_, _path_to(parents, entry))
        return True, None

    if prop == "AST":
        order, parents = _bfs(slice_, initial)
        reachable = set(order)
        for si in sorted(slice_.bottom_sccs):
            members = set(slice_.sccs[si])
            if members & reachable and not slice_.is_trivial_bscc(si):
                entry = next(v for v in order if v in members)
                return False, _witness(slice_, _path_to(parents, entry))
        return True, None

    # DF: no reachable terminating configuration
    order, parents = _bfs(slice_, initial)
    for v in order:
        if slice_.is_terminating(v):
            return False, _witness(slice_, _path_to(parents, v))
    return True, None


# -- closure lifting -----------------------------------------------------------


def slice_closure(slice_: FiniteSlice) -> frozenset[tuple[Word, Word]]:
    """The reflexive-transitive closure of the slice edges, as word pairs."""
    pairs = set()
    for i, c in enumerate(slice_.configurations):
        order, _parents = _bfs(slice_, [i])
        for j in order:
            pairs.add((c, slice_.configurations[j]))
    return frozenset(pairs)


def relation_to_transducer(
    alphabet: Alphabet, pairs: Iterable[tuple[Word, Word]]
) -> Transducer:
    """Lift a finite set of equal-length word pairs into a transducer.

    Builds a trie over the convolutions and then merges states with equal
    residuals bottom-up, so large explicitly computed closures stay
    manageable.  Accepts exactly the given pairs.
    """
    convs = []
    for x, y in pairs:
        if len(x) != len(y):
            raise NotLengthPreserving(
                f"pair lengths differ: {len(x)} vs {len(y)}"
            )
        alphabet.check_word(x)
        alphabet.check_word(y)
        convs.append(convolve(x, y))
    convs.sort()

    children: list[dict] = [{}]
    accepting: list[bool] = [False]
    depth: list[int] = [0]
    for conv in convs:
        node = 0
        for sym in conv:
            nxt = children[node].get(sym)
            if nxt is None:
                nxt = len(children)
                children.append({})
                accepting.append(False)
                depth.append(depth[node] + 1)
                children[node][sym] = nxt
            node = nxt
        accepting[node] = True

    # merge equal residuals, deepest first
    canon: dict = {}
    rep: list[int] = [0] * len(children)
    for node in sorted(range(len(children)), key=depth.__getitem__, reverse=True):
        signature = (
            accepting[node],
            tuple(sorted(
                ((sym, rep[child]) for sym, child in children[node].items()),
                key=lambda kv: (kv[0].top, kv[0].bottom, kv[1]),
            )),
        )
        rep[node] = canon.setdefault(signature, node)

    states = sorted({rep[n] for n in range(len(children))})
    transitions: dict = {}
    for node in states:
        for sym, child in children[node].items():
            transitions.setdefault((node, sym), set()).add(rep[child])
    transitions = {k: tuple(v) for k, v in transitions.items()}
    result = Transducer(
        alphabet,
        alphabet,
        tuple(states),
        transitions,
        [rep[0]],
        [n for n in states if accepting[n]],
    )
    return result.trim()


def dump_slice(slice_: FiniteSlice) -> str:
    """Stable text dump of a slice: every configuration with its successor
    indices, the initial indices, and the bottom components."""
    lines = [
        f"length: {slice_.length}",
        "alphabet: " + " ".join(slice_.alphabet.symbols),
        "initial: " + " ".join(str(i) for i in sorted(slice_.initial)),
        "configurations:",
    ]
    for i, config in enumerate(slice_.configurations):
        arrow = " ".join(str(j) for j in slice_.edges[i])
        rendered = " ".join(config) if config else "ε"
        lines.append(f"{i}: {rendered} -> {arrow}".rstrip())
    for si in sorted(slice_.bottom_sccs):
        members = " ".join(str(v) for v in slice_.sccs[si])
        lines.append(f"bottom-scc: {members}")
    return "\n".join(lines) + "\n"


# -- random walks ----------------------------------------------------------------


@dataclass(frozen=True)
class SimulationConfig:
    runs: int = 100
    max_steps: int = 1000
    seed: int = 0
    successor_cap: int = 4096


@dataclass(frozen=True)
class SimulationStats:
    runs: int
    goal_hit_frequency: float | None
    termination_frequency: float
    mean_steps_to_absorption: float | None


def simulate(
    rts: Rts, start: Word, config: SimulationConfig, goal: Nfa | None = None
) -> SimulationStats:
    """Seeded random walks choosing successors uniformly by index.

    Each run walks from ``start`` for up to ``max_steps`` steps or until a
    terminating configuration absorbs it.  Successor sets are memoized per
    call; a configuration with more than ``successor_cap`` successors is
    an error rather than a silently biased sample.
    """
    rts.alphabet.check_word(start)
    if goal is not None and goal.alphabet != rts.alphabet:
        raise ValueError("goal alphabet differs from the system alphabet")
    rng = np.random.default_rng(config.seed)
    memo: dict[Word, tuple[Word, ...]] = {}
    goal_memo: dict[Word, bool] = {}

    def succs(c: Word) -> tuple[Word, ...]:
        cached = memo.get(c)
        if cached is None:
            words, truncated = rts.successors(c, config.successor_cap)
            if truncated:
                raise SuccessorCapExceeded(
                    f"configuration has more than {config.successor_cap} successors"
                )
            cached = memo[c] = words
        return cached

    def hits(c: Word) -> bool:
        if goal is None:
            return False
        cached = goal_memo.get(c)
        if cached is None:
            cached = goal_memo[c] = goal.accepts(c)
        return cached

    hit_runs = 0
    terminated_runs = 0
    steps_when_absorbed: list[int] = []
    for _run in range(config.runs):
        current = start
        hit = hits(current)
        for step in range(config.max_steps):
            out = succs(current)
            if not out:
                terminated_runs += 1
                steps_when_absorbed.append(step)
                break
            current = out[int(rng.integers(0, len(out)))]
            if not hit and hits(current):
                hit = True
        if hit:
            hit_runs += 1
    return SimulationStats(
        runs=config.runs,
        goal_hit_frequency=None if goal is None else hit_runs / config.runs,
        termination_frequency=terminated_runs / config.runs,
        mean_steps_to_absorption=(
            sum(steps_when_absorbed) / len(steps_when_absorbed)
            if steps_when_absorbed
            else None
        ),
    )
