"""Random instance generators and brute-force reference checks for the tests.

The reference functions here deliberately avoid the package's own
algorithms: they enumerate definitions directly.
"""
from __future__ import annotations

import itertools
import random
from typing import Optional

from wsbn.graphs import LabelledGraph, Shape
from wsbn.process import ActionLabel, ProcessConfig, ProcessSpec, TransitionRule

LETTERS = "abc"


def random_finite_spec(
    rng: random.Random,
    max_states: int = 4,
    max_letters: int = 3,
    max_transitions: int = 8,
    min_transitions: int = 0,
) -> ProcessSpec:
    n = rng.randint(1, max_states)
    states = [f"q{i}" for i in range(n)]
    letters = list(LETTERS[: rng.randint(1, max_letters)])
    initial = rng.sample(states, rng.randint(1, min(2, n)))
    rules = []
    for i in range(rng.randint(min_transitions, max_transitions)):
        kind = rng.choice(("broadcast", "receive"))
        rules.append(
            TransitionRule(f"t{i}", rng.choice(states), ActionLabel(kind, rng.choice(letters)), rng.choice(states))
        )
    return ProcessSpec(states, letters, initial, rules)


def random_vass_rule(rng: random.Random, dim: int, kind: str = "broadcast") -> TransitionRule:
    vec = tuple(rng.randint(-2, 2) for _ in range(dim))
    return TransitionRule("t", "p", ActionLabel(kind, "a"), "q", vec)


def random_shape(rng: random.Random, n: int, p: float = 0.5) -> Shape:
    return Shape(n, frozenset(e for e in itertools.combinations(range(n), 2) if rng.random() < p))


def random_graph(rng: random.Random, labels, max_n: int, p: float = 0.5) -> LabelledGraph:
    n = rng.randint(1, max_n)
    return LabelledGraph.on(random_shape(rng, n, p), [rng.choice(labels) for _ in range(n)])


def random_vass_config(rng: random.Random, states, dim: int, hi: int) -> ProcessConfig:
    return ProcessConfig(rng.choice(states), tuple(rng.randint(0, hi) for _ in range(dim)))


# brute-force references


def leq_ref(c1: ProcessConfig, c2: ProcessConfig) -> bool:
    return c1.state == c2.state and all(a <= b for a, b in zip(c1.counters, c2.counters))


def antichain_ref(items, leq) -> set:
    """Minimal elements, by pairwise comparison (duplicates collapse)."""
    items = list(dict.fromkeys(items))
    return {x for x in items if not any(leq(y, x) and not leq(x, y) for y in items)}


def embedding_ref(g1: LabelledGraph, g2: LabelledGraph, leq=leq_ref) -> bool:
    """Try every injection of vertices."""
    for image in itertools.permutations(range(g2.n), g1.n):
        if not all(leq(g1.labels[i], g2.labels[image[i]]) for i in range(g1.n)):
            continue
        if all(
            ((u, v) in g1.edges) == (tuple(sorted((image[u], image[v]))) in g2.edges)
            for u, v in itertools.combinations(range(g1.n), 2)
        ):
            return True
    return False


def longest_path_ref(shape: Shape) -> int:
    """Longest vertex sequence that is a path, over all orderings."""
    best = 0
    for r in range(2, shape.n + 1):
        for seq in itertools.permutations(range(shape.n), r):
            if all(tuple(sorted(e)) in shape.edges for e in zip(seq, seq[1:])):
                best = max(best, r - 1)
    return best


def grid(dim: int, hi: int):
    return itertools.product(range(hi + 1), repeat=dim)


def fire_ref(c: ProcessConfig, t: TransitionRule) -> Optional[ProcessConfig]:
    if c.state != t.src:
        return None
    after = tuple(a + b for a, b in zip(c.counters, t.vector))
    return None if min(after, default=0) < 0 else ProcessConfig(t.dst, after)


def min_predecessors_ref(target: ProcessConfig, t: TransitionRule, hi: int) -> set:
    """Minimal grid points from which ``t`` lands above ``target``."""
    hits = []
    for u in grid(len(t.vector), hi):
        after = fire_ref(ProcessConfig(t.src, u), t)
        if after is not None and leq_ref(target, after):
            hits.append(ProcessConfig(t.src, u))
    return antichain_ref(hits, leq_ref)


def is_clique_ref(shape: Shape) -> bool:
    return all((u, v) in shape.edges for u, v in itertools.combinations(range(shape.n), 2))


def connected_shapes_ref(n: int) -> list[Shape]:
    """All connected graphs on ``n`` labelled vertices."""
    pairs = list(itertools.combinations(range(n), 2))
    out = []
    for mask in range(1 << len(pairs)):
        s = Shape(n, frozenset(p for i, p in enumerate(pairs) if mask >> i & 1))
        if s.is_connected():
            out.append(s)
    return out


def isomorphic_ref(a: Shape, b: Shape) -> bool:
    if a.n != b.n or len(a.edges) != len(b.edges):
        return False
    for perm in itertools.permutations(range(a.n)):
        if {tuple(sorted((perm[u], perm[v]))) for u, v in a.edges} == b.edges:
            return True
    return False


def diameter_ref(shape: Shape) -> int:
    """Floyd-Warshall on a connected shape."""
    inf = float("inf")
    d = [[0 if i == j else (1 if tuple(sorted((i, j))) in shape.edges else inf) for j in range(shape.n)]
         for i in range(shape.n)]
    for k in range(shape.n):
        for i in range(shape.n):
            for j in range(shape.n):
                d[i][j] = min(d[i][j], d[i][k] + d[k][j])
    return max(max(row) for row in d)
