"""Labelled graphs, the induced subgraph ordering and broadcast steps.

Vertices are the integers ``0..n-1``; an edge is a sorted pair.  A
labelled graph is a network configuration: one process configuration
per node.
"""
from __future__ import annotations

import itertools
from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Iterator, Mapping, Optional, Sequence

import networkx as nx

from .process import (
    ProcessConfig,
    ProcessSpec,
    TransitionRule,
    broadcast,
    check_config,
    config_leq,
    enabled,
    receive,
    step,
)

Edge = tuple[int, int]


def _edge(u: int, v: int) -> Edge:
    if u == v:
        raise ValueError(f"self-loop on vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Shape:
    """An unlabelled simple undirected graph."""

    n: int
    edges: frozenset = frozenset()

    def __post_init__(self):
        edges = frozenset(_edge(u, v) for u, v in self.edges)
        for u, v in edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) references a vertex outside 0..{self.n - 1}")
        object.__setattr__(self, "edges", edges)

    @classmethod
    def complete(cls, n: int) -> "Shape":
        return cls(n, frozenset(itertools.combinations(range(n), 2)))

    @classmethod
    def path(cls, n: int) -> "Shape":
        return cls(n, frozenset((i, i + 1) for i in range(n - 1)))

    @property
    def vertices(self) -> range:
        return range(self.n)

    def adjacent(self, u: int, v: int) -> bool:
        return u != v and _edge(u, v) in self.edges

    @cached_property
    def _adj(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    def neighbors(self, v: int) -> list[int]:
        return list(self._adj[v])

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def max_degree(self) -> int:
        return max((self.degree(v) for v in self.vertices), default=0)

    def is_clique(self) -> bool:
        return len(self.edges) == self.n * (self.n - 1) // 2

    def distances(self, src: int) -> dict[int, int]:
        dist = {src: 0}
        queue = deque([src])
        while queue:
            u = queue.popleft()
            for w in self.neighbors(u):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def is_connected(self) -> bool:
        return self.n == 0 or len(self.distances(0)) == self.n

    def diameter(self) -> Optional[int]:
        """Largest distance, or ``None`` when disconnected."""
        if not self.is_connected():
            return None
        return max((max(self.distances(v).values()) for v in self.vertices), default=0)

    def extend(self, neighbourhood: Iterable[int]) -> "Shape":
        """Add vertex ``n`` adjacent to exactly ``neighbourhood``."""
        return Shape(self.n + 1, self.edges | {(u, self.n) for u in neighbourhood})

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges)
        return g


@dataclass(frozen=True)
class LabelledGraph:
    labels: tuple[ProcessConfig, ...]
    edges: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "edges", Shape(len(self.labels), self.edges).edges)

    @classmethod
    def on(cls, shape: Shape, labels: Sequence[ProcessConfig]) -> "LabelledGraph":
        if len(labels) != shape.n:
            raise ValueError(f"{len(labels)} labels for a graph with {shape.n} vertices")
        return cls(tuple(labels), shape.edges)

    @classmethod
    def clique(cls, labels: Sequence[ProcessConfig]) -> "LabelledGraph":
        return cls.on(Shape.complete(len(labels)), labels)

    @classmethod
    def single(cls, label: ProcessConfig) -> "LabelledGraph":
        return cls((label,))

    @property
    def n(self) -> int:
        return len(self.labels)

    @cached_property
    def shape(self) -> Shape:
        return Shape(self.n, self.edges)

    def neighbors(self, v: int) -> list[int]:
        return self.shape.neighbors(v)

    def relabel(self, changes: Mapping[int, ProcessConfig]) -> "LabelledGraph":
        labels = list(self.labels)
        for v, c in changes.items():
            labels[v] = c
        return LabelledGraph(tuple(labels), self.edges)

    def __str__(self) -> str:
        labels = ", ".join(f"{v}={c}" for v, c in enumerate(self.labels))
        edges = " ".join(f"{u}-{v}" for u, v in sorted(self.edges))
        return f"<{labels}" + (f" | {edges}>" if edges else ">")


LabelLeq = Callable[[ProcessConfig, ProcessConfig], bool]


def induced_embedding_leq(g1: LabelledGraph, g2: LabelledGraph, leq: LabelLeq = config_leq) -> bool:
    """Is there an injection preserving edges, non-edges and label order?"""
    n1, n2 = g1.n, g2.n
    if n1 > n2:
        return False
    s1, s2 = g1.shape, g2.shape
    # most constrained vertices first
    order = sorted(range(n1), key=lambda v: -s1.degree(v))
    candidates = [[w for w in range(n2) if leq(g1.labels[v], g2.labels[w])] for v in range(n1)]
    if any(not c for c in candidates):
        return False
    image: dict[int, int] = {}
    used: set[int] = set()

    def extend(i: int) -> bool:
        if i == n1:
            return True
        v = order[i]
        for w in candidates[v]:
            if w in used:
                continue
            if all(s1.adjacent(u, v) == s2.adjacent(image[u], w) for u in order[:i]):
                image[v] = w
                used.add(w)
                if extend(i + 1):
                    return True
                used.discard(w)
                del image[v]
        return False

    return extend(0)


def clique_leq(g1: LabelledGraph, g2: LabelledGraph, leq: LabelLeq = config_leq) -> bool:
    """Multiset embedding of the labels, which decides the order on cliques."""
    if not (g1.shape.is_clique() and g2.shape.is_clique()):
        raise ValueError("clique_leq needs two cliques")
    if g1.n > g2.n:
        return False
    if g1.n == 0:
        return True
    if leq is config_leq and not any(c.counters for c in g1.labels + g2.labels):
        # finite-state labels: the order is equality, compare multiplicities
        return not (Counter(g1.labels) - Counter(g2.labels))
    left = [("l", i) for i in range(g1.n)]
    b = nx.Graph()
    b.add_nodes_from(left)
    b.add_nodes_from(("r", j) for j in range(g2.n))
    b.add_edges_from(
        (("l", i), ("r", j)) for i in range(g1.n) for j in range(g2.n) if leq(g1.labels[i], g2.labels[j])
    )
    matching = nx.bipartite.hopcroft_karp_matching(b, top_nodes=left)
    return all(x in matching for x in left)


def pointwise_leq(g1: LabelledGraph, g2: LabelledGraph, leq: LabelLeq = config_leq) -> bool:
    """Order on labellings of one fixed shape: same edges, labels vertex by vertex."""
    return g1.edges == g2.edges and g1.n == g2.n and all(map(leq, g1.labels, g2.labels))


def longest_simple_path(shape: Shape, stop_above: Optional[int] = None) -> int:
    """Edge count of the longest simple path.

    With ``stop_above`` set the search returns as soon as a path longer
    than that is found (the result is then only a lower bound).
    """
    best = 0
    adj = [shape.neighbors(v) for v in shape.vertices]

    def dfs(v: int, seen: set, length: int) -> bool:
        nonlocal best
        best = max(best, length)
        if stop_above is not None and best > stop_above:
            return True
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                if dfs(w, seen, length + 1):
                    return True
                seen.discard(w)
        return False

    for v in shape.vertices:
        if dfs(v, {v}, 0):
            break
    return best


def broadcast_step(
    g: LabelledGraph, v: int, a: str, choice: Mapping[int, TransitionRule]
) -> Optional[LabelledGraph]:
    """Vertex ``v`` broadcasts ``a``; every neighbour must receive it.

    ``choice`` assigns ``v`` a ``!!a`` rule and each neighbour a ``??a``
    rule.  Returns ``None`` if any chosen rule is disabled.
    """
    nbrs = g.neighbors(v)
    missing = [u for u in [v, *nbrs] if u not in choice]
    if missing:
        raise ValueError(f"no rule chosen for vertices {missing}")
    if choice[v].label != broadcast(a):
        raise ValueError(f"vertex {v} must take a !!{a} rule, got {choice[v].label}")
    for u in nbrs:
        if choice[u].label != receive(a):
            raise ValueError(f"vertex {u} must take a ??{a} rule, got {choice[u].label}")
    changes = {}
    for u in [v, *nbrs]:
        after = step(g.labels[u], choice[u])
        if after is None:
            return None
        changes[u] = after
    return g.relabel(changes)


@dataclass(frozen=True)
class BroadcastMove:
    broadcaster: int
    letter: str
    rules: tuple[tuple[int, str], ...]
    result: LabelledGraph


def broadcast_successors(g: LabelledGraph, spec: ProcessSpec) -> Iterator[BroadcastMove]:
    """All one-step broadcast successors of ``g`` (blocking semantics)."""
    for v in range(g.n):
        nbrs = g.neighbors(v)
        for tv in enabled(g.labels[v], spec.broadcasts()):
            a = tv.label.letter
            options = [enabled(g.labels[u], spec.receives(a)) for u in nbrs]
            if any(not o for o in options):
                continue
            for pick in itertools.product(*options):
                choice = {v: tv, **dict(zip(nbrs, pick))}
                after = broadcast_step(g, v, a, choice)
                rules = tuple(sorted((u, t.id) for u, t in choice.items()))
                yield BroadcastMove(v, a, rules, after)


def check_graph(g: LabelledGraph, spec: ProcessSpec) -> LabelledGraph:
    for c in g.labels:
        check_config(c, spec)
    return g
