"""Bounded explicit-state exploration of broadcast networks.

Used as an independent check of the symbolic engines.  Under
reconfiguration node identities do not matter (links can be redrawn
before every broadcast), so global states are multisets of local
configurations; a broadcast reaches any chosen subset of the other nodes.
On a static shape, states are labellings and broadcasts are blocking.

Counter values above ``max_counter`` are pruned, never saturated, so a
FOUND answer is always a genuine run.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Iterator, Optional

from .graphs import BroadcastMove, LabelledGraph, Shape, broadcast_step, broadcast_successors
from .process import ProcessConfig, ProcessSpec, check_config, config_leq, enabled, step


@dataclass(frozen=True)
class ExplorationBounds:
    max_nodes: int = 3
    max_counter: int = 3
    max_depth: int = 10

    def __post_init__(self):
        if min(self.max_nodes, self.max_counter, self.max_depth) < 0:
            raise ValueError("exploration bounds must be non-negative")


@dataclass(frozen=True)
class RBNMove:
    """One broadcast in a reconfigurable network."""

    broadcaster: ProcessConfig
    rule: str
    letter: str
    receivers: tuple[tuple[ProcessConfig, str], ...]
    result: tuple[ProcessConfig, ...]


@dataclass
class OracleResult:
    found: bool
    exhausted: bool
    trace: list = field(default_factory=list)
    initial: Optional[Hashable] = None
    final: Optional[Hashable] = None
    states_visited: int = 0

    @property
    def status(self) -> str:
        if self.found:
            return "FOUND"
        return "NOT_FOUND EXHAUSTED" if self.exhausted else "NOT_FOUND"


def _bfs(
    initials: Iterable,
    successors: Callable[[Hashable], Iterator[tuple[object, Hashable]]],
    goal: Callable[[Hashable], bool],
    within: Callable[[Hashable], bool],
    max_depth: int,
) -> OracleResult:
    parent: dict = {}
    frontier = []
    for s in initials:
        if s in parent or not within(s):
            continue
        parent[s] = None
        if goal(s):
            return OracleResult(True, False, [], s, s, len(parent))
        frontier.append(s)
    pruned = False
    depth = 0
    while frontier:
        nxt = []
        for s in frontier:
            for move, t in successors(s):
                if not within(t):
                    pruned = True
                    continue
                if t in parent:
                    continue
                if depth == max_depth:
                    # a new state exists beyond the depth bound
                    return OracleResult(False, False, states_visited=len(parent))
                parent[t] = (s, move)
                if goal(t):
                    trace = []
                    cur = t
                    while parent[cur] is not None:
                        prev, mv = parent[cur]
                        trace.append(mv)
                        cur = prev
                    trace.reverse()
                    return OracleResult(True, False, trace, cur, t, len(parent))
                nxt.append(t)
        frontier = nxt
        depth += 1
    return OracleResult(False, not pruned, states_visited=len(parent))


def _counter_bound(max_counter: int, configs: Iterable[ProcessConfig]) -> bool:
    return all(x <= max_counter for c in configs for x in c.counters)


def rbn_successors(state: tuple[ProcessConfig, ...], spec: ProcessSpec) -> Iterator[tuple[RBNMove, tuple]]:
    """Broadcasts from a multiset (sorted tuple) of configurations."""
    done_broadcasters = set()
    for i, c in enumerate(state):
        if c in done_broadcasters:
            continue
        done_broadcasters.add(c)
        others = state[:i] + state[i + 1 :]
        for tv in enabled(c, spec.broadcasts()):
            a = tv.label.letter
            after_v = step(c, tv)
            options = [[None, *enabled(o, spec.receives(a))] for o in others]
            for pick in itertools.product(*options):
                result = [after_v]
                receivers = []
                for o, t in zip(others, pick):
                    if t is None:
                        result.append(o)
                    else:
                        result.append(step(o, t))
                        receivers.append((o, t.id))
                res = tuple(sorted(result))
                yield RBNMove(c, tv.id, a, tuple(receivers), res), res


def explore_rbn(spec: ProcessSpec, target: ProcessConfig, bounds: ExplorationBounds) -> OracleResult:
    check_config(target, spec)
    inits = spec.initial_configs()
    starts = (
        tuple(sorted(m))
        for n in range(1, bounds.max_nodes + 1)
        for m in itertools.combinations_with_replacement(inits, n)
    )
    return _bfs(
        starts,
        lambda s: rbn_successors(s, spec),
        lambda s: any(config_leq(target, c) for c in s),
        lambda s: _counter_bound(bounds.max_counter, s),
        bounds.max_depth,
    )


def explore_static(
    spec: ProcessSpec, target: ProcessConfig, shape: Shape, bounds: ExplorationBounds
) -> OracleResult:
    """Explore every initial labelling of ``shape``; ``max_nodes`` is not used."""
    check_config(target, spec)
    starts = (LabelledGraph.on(shape, labels) for labels in itertools.product(spec.initial_configs(), repeat=shape.n))

    def successors(g):
        for move in broadcast_successors(g, spec):
            yield move, move.result

    return _bfs(
        starts,
        successors,
        lambda g: any(config_leq(target, c) for c in g.labels),
        lambda g: _counter_bound(bounds.max_counter, g.labels),
        bounds.max_depth,
    )


def replay_rbn(spec: ProcessSpec, initial: tuple[ProcessConfig, ...], trace: Iterable[RBNMove]) -> tuple:
    """Re-execute a reconfigurable-network trace; raises ``ValueError`` on an illegal step."""
    state = list(initial)
    for k, mv in enumerate(trace, 1):
        pool = list(state)
        tv = spec.rule(mv.rule)
        if mv.broadcaster not in pool or not tv.is_broadcast:
            raise ValueError(f"step {k}: broadcaster {mv.broadcaster} cannot fire {mv.rule}")
        pool.remove(mv.broadcaster)
        result = [step(mv.broadcaster, tv)]
        for c, rid in mv.receivers:
            t = spec.rule(rid)
            if c not in pool or t.label.letter != tv.label.letter or not t.is_receive:
                raise ValueError(f"step {k}: receiver {c} cannot take {rid}")
            pool.remove(c)
            result.append(step(c, t))
        if any(r is None for r in result):
            raise ValueError(f"step {k}: a chosen rule is disabled")
        state = sorted(result + pool)
        if tuple(state) != mv.result:
            raise ValueError(f"step {k}: result mismatch")
    return tuple(state)


def replay_static(spec: ProcessSpec, initial: LabelledGraph, trace: Iterable[BroadcastMove]) -> LabelledGraph:
    g = initial
    for k, mv in enumerate(trace, 1):
        choice = {v: spec.rule(rid) for v, rid in mv.rules}
        nxt = broadcast_step(g, mv.broadcaster, mv.letter, choice)
        if nxt is None or nxt != mv.result:
            raise ValueError(f"step {k}: broadcast does not replay")
        g = nxt
    return g
