"""Static topologies: graph-level WSTS and their coverability procedures.

For cliques and k-path-bounded graphs, network configurations ordered by
the induced subgraph relation form a WSTS; coverability of a local
configuration ``s`` is coverability of the one-vertex graph labelled
``s``.  For a fixed graph, labellings are tuples under the pointwise
order.  Bounded diameter and degree reduces to finitely many fixed graphs.

Blocking broadcasts are monotone on growing graphs only when no node can
veto a broadcast, i.e. when the process is receive-complete (see
:func:`wsbn.process.receive_complete`).  Without it the clique and path
engines still never report a coverable target as uncoverable, but a
COVERABLE answer must be confirmed by replaying a run; the result's
``exact`` flag records whether that happened.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional, Sequence, Union

from .graphs import (
    BroadcastMove,
    LabelledGraph,
    Shape,
    broadcast_successors,
    check_graph,
    clique_leq,
    induced_embedding_leq,
    longest_simple_path,
    pointwise_leq,
)
from .order import CoverResult, Verdict, backward_coverability, basis_contains, minimize
from .process import (
    ProcessConfig,
    ProcessSpec,
    broadcast,
    check_config,
    config_leq,
    enabled,
    init_covers,
    min_enabling,
    minimal_configs,
    pre_basis_labelled,
    receive,
    receive_complete,
    step,
)

MAX_ENUMERATION_VERTICES = 8


class TopologyClass:
    """A family of communication graphs closed under the engines' needs."""

    extendable = True

    def contains(self, shape: Shape) -> bool:
        raise NotImplementedError

    def leq(self, g1: LabelledGraph, g2: LabelledGraph) -> bool:
        return induced_embedding_leq(g1, g2)


@dataclass(frozen=True)
class Clique(TopologyClass):
    def contains(self, shape: Shape) -> bool:
        return shape.is_clique()

    def leq(self, g1, g2):
        return clique_leq(g1, g2)

    def __str__(self):
        return "clique"


@dataclass(frozen=True)
class PathBounded(TopologyClass):
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("path bound must be >= 0")

    def contains(self, shape: Shape) -> bool:
        return longest_simple_path(shape, stop_above=self.k) <= self.k

    def __str__(self):
        return f"path:{self.k}"


@dataclass(frozen=True)
class FixedGraph(TopologyClass):
    shape: Shape
    extendable = False

    def __post_init__(self):
        if self.shape.n < 1:
            raise ValueError("fixed topology needs at least one vertex")

    def contains(self, shape: Shape) -> bool:
        return canonical_form(shape) == canonical_form(self.shape)

    def leq(self, g1, g2):
        return pointwise_leq(g1, g2)

    def __str__(self):
        return "fixed"


@dataclass(frozen=True)
class BoundedDiamDeg(TopologyClass):
    k: int
    d: int
    n_max: int
    extendable = False

    def __post_init__(self):
        if min(self.k, self.d, self.n_max) < 1:
            raise ValueError("diameter, degree and vertex bounds must be >= 1")

    def contains(self, shape: Shape) -> bool:
        diam = shape.diameter()
        return diam is not None and diam <= self.k and shape.max_degree() <= self.d and shape.n <= self.n_max

    def leq(self, g1, g2):
        return pointwise_leq(g1, g2)

    def __str__(self):
        return f"diamdeg:{self.k},{self.d},{self.n_max}"


def parse_class(text: str) -> TopologyClass:
    """``clique``, ``path:K``, ``fixed`` (shape supplied separately) or ``diamdeg:K,D,N``."""
    name, _, args = text.partition(":")
    try:
        if name == "clique" and not args:
            return Clique()
        if name == "path":
            return PathBounded(int(args))
        if name == "diamdeg":
            k, d, n = (int(x) for x in args.split(","))
            return BoundedDiamDeg(k, d, n)
    except ValueError as exc:
        raise ValueError(f"bad topology class {text!r}: {exc}") from None
    raise ValueError(f"unknown topology class {text!r}")


def in_class(g: Union[LabelledGraph, Shape], cls: TopologyClass) -> bool:
    shape = g.shape if isinstance(g, LabelledGraph) else g
    return cls.contains(shape)


def class_extensions(shape: Shape, cls: TopologyClass) -> list[tuple[Shape, tuple[int, ...]]]:
    """One-vertex extensions of ``shape`` inside ``cls``.

    The new vertex is ``shape.n``; the embedding of the old graph is the
    identity, returned explicitly.
    """
    if not cls.extendable:
        raise ValueError(f"{cls} never grows the graph; it has no extensions")
    ident = tuple(range(shape.n))
    if isinstance(cls, Clique):
        return [(shape.extend(range(shape.n)), ident)]
    out = []
    for r in range(shape.n + 1):
        for nbhd in itertools.combinations(range(shape.n), r):
            h = shape.extend(nbhd)
            if cls.contains(h):
                out.append((h, ident))
    return out


def _moves_into(
    before: LabelledGraph,
    v: int,
    a: str,
    spec: ProcessSpec,
    accept: Callable[[LabelledGraph], bool],
    rule=None,
) -> bool:
    """Can ``v`` broadcast ``a`` in ``before`` and land in an accepted graph?"""
    nbrs = before.neighbors(v)
    own = [rule] if rule is not None else enabled(before.labels[v], spec.broadcasts(a))
    options = [enabled(before.labels[u], spec.receives(a)) for u in nbrs]
    for tv in own:
        cv = step(before.labels[v], tv)
        if cv is None:
            continue
        for pick in itertools.product(*options):
            changes = {v: cv}
            for u, t in zip(nbrs, pick):
                changes[u] = step(before.labels[u], t)
            if accept(before.relabel(changes)):
                return True
    return False


def _internal_predecessors(theta: LabelledGraph, spec: ProcessSpec, accept) -> Iterator[LabelledGraph]:
    for v in range(theta.n):
        nbrs = theta.neighbors(v)
        for a in spec.alphabet:
            own = pre_basis_labelled(theta.labels[v], broadcast(a), spec)
            if not own:
                continue
            theirs = [pre_basis_labelled(theta.labels[u], receive(a), spec) for u in nbrs]
            if any(not b for b in theirs):
                continue
            for cv in own:
                for cus in itertools.product(*theirs):
                    before = theta.relabel({v: cv, **dict(zip(nbrs, cus))})
                    if _moves_into(before, v, a, spec, accept):
                        yield before


def _external_predecessors(
    theta: LabelledGraph, spec: ProcessSpec, cls: TopologyClass, accept
) -> Iterator[LabelledGraph]:
    for h, _ in class_extensions(theta.shape, cls):
        v = theta.n
        nbrs = h.neighbors(v)
        for a in spec.alphabet:
            rules = spec.broadcasts(a)
            if not rules:
                continue
            theirs = [pre_basis_labelled(theta.labels[u], receive(a), spec) for u in nbrs]
            if any(not b for b in theirs):
                continue
            for t in rules:
                for cv in min_enabling(t):
                    for cus in itertools.product(*theirs):
                        labels = list(theta.labels) + [cv]
                        for u, c in zip(nbrs, cus):
                            labels[u] = c
                        before = LabelledGraph.on(h, labels)
                        if _moves_into(before, v, a, spec, accept, rule=t):
                            yield before


def graph_pre_basis(
    basis: Sequence[LabelledGraph], spec: ProcessSpec, cls: TopologyClass
) -> tuple[LabelledGraph, ...]:
    """Basis of the one-step predecessors of ``↑basis`` inside ``cls``.

    Every graph is tried with each vertex as an internal broadcaster;
    extendable classes also try a fresh broadcasting vertex attached by
    every admissible neighbourhood.
    """
    basis = tuple(basis)

    def accept(g: LabelledGraph) -> bool:
        return basis_contains(basis, g, cls.leq)

    found: list[LabelledGraph] = []
    for theta in basis:
        found.extend(_internal_predecessors(theta, spec, accept))
        if cls.extendable:
            found.extend(_external_predecessors(theta, spec, cls, accept))
    return minimize(found, cls.leq)


def graph_init_covers(g: LabelledGraph, spec: ProcessSpec) -> bool:
    return all(init_covers(c, spec) for c in g.labels)


class GraphWSTS:
    """Network configurations of one topology class, for the backward engine."""

    def __init__(self, spec: ProcessSpec, cls: TopologyClass):
        self.spec = spec
        self.cls = cls

    def leq(self, g1: LabelledGraph, g2: LabelledGraph) -> bool:
        return self.cls.leq(g1, g2)

    def pre_basis(self, g: LabelledGraph) -> tuple[LabelledGraph, ...]:
        return graph_pre_basis((g,), self.spec, self.cls)

    def init_covers(self, g: LabelledGraph) -> bool:
        return graph_init_covers(g, self.spec)


@dataclass
class StaticResult:
    """Verdict of a static-topology check.

    ``exact`` is false only for a COVERABLE verdict on a process that is
    not receive-complete whose witness could not be replayed.  ``run`` is
    a replayed witness from an initial network when one was found.
    """

    verdict: Verdict
    cls: TopologyClass
    cover: Optional[CoverResult] = None
    exact: bool = True
    run: Optional[list[BroadcastMove]] = None
    initial: Optional[LabelledGraph] = None
    shapes_checked: int = 0
    shape: Optional[Shape] = None

    @property
    def coverable(self) -> bool:
        return self.verdict is Verdict.COVERABLE


def replay_witness(
    cover: CoverResult, spec: ProcessSpec, leq, target: ProcessConfig
) -> Optional[list[BroadcastMove]]:
    """Turn a backward chain into a concrete forward run, if one follows it.

    The witness is itself an initial network (initial configurations are
    minimal in their state).  At each stage, any broadcast landing above
    the next chain element is tried, with backtracking.
    """
    chain = cover.chain()
    if not chain:
        return None
    seen: set = set()

    def covers_target(g: LabelledGraph) -> bool:
        return any(config_leq(target, c) for c in g.labels)

    def go(g: LabelledGraph, i: int) -> Optional[list[BroadcastMove]]:
        if covers_target(g):
            return []
        if i == len(chain) - 1 or (g, i) in seen:
            return None
        seen.add((g, i))
        nxt = chain[i + 1]
        for move in broadcast_successors(g, spec):
            if leq(nxt, move.result):
                rest = go(move.result, i + 1)
                if rest is not None:
                    return [move, *rest]
        return None

    return go(chain[0], 0)


def _finish(cover: CoverResult, spec, cls, target, exact_default: bool) -> StaticResult:
    res = StaticResult(cover.verdict, cls, cover)
    if cover.coverable:
        run = replay_witness(cover, spec, cls.leq, target)
        res.run = run
        res.initial = cover.witness if run is not None else None
        res.exact = exact_default or run is not None
    return res


def static_coverable(
    spec: ProcessSpec,
    target: ProcessConfig,
    cls: TopologyClass,
    max_iterations: Optional[int] = None,
    shape: Optional[Shape] = None,
) -> StaticResult:
    """Coverability of ``target`` over all networks of ``cls`` without reconfiguration.

    Fixed and bounded diameter/degree classes are routed to their own
    procedures; ``shape`` overrides the fixed graph.
    """
    check_config(target, spec)
    if isinstance(cls, FixedGraph):
        return fixed_graph_coverable(spec, target, shape or cls.shape, max_iterations)
    if isinstance(cls, BoundedDiamDeg):
        return bounded_diam_deg_coverable(spec, target, cls.k, cls.d, cls.n_max, max_iterations)
    cover = backward_coverability(GraphWSTS(spec, cls), [LabelledGraph.single(target)], max_iterations)
    return _finish(cover, spec, cls, target, receive_complete(spec))


def fixed_target_basis(spec: ProcessSpec, target: ProcessConfig, shape: Shape) -> list[LabelledGraph]:
    """Labellings with ``target`` at one vertex and minimal configurations elsewhere."""
    mins = minimal_configs(spec)
    out = []
    for i in range(shape.n):
        for rest in itertools.product(mins, repeat=shape.n - 1):
            labels = list(rest)
            labels.insert(i, target)
            out.append(LabelledGraph.on(shape, labels))
    return out


def fixed_graph_coverable(
    spec: ProcessSpec, target: ProcessConfig, shape: Shape, max_iterations: Optional[int] = None
) -> StaticResult:
    check_config(target, spec)
    cls = FixedGraph(shape)
    cover = backward_coverability(GraphWSTS(spec, cls), fixed_target_basis(spec, target, shape), max_iterations)
    res = _finish(cover, spec, cls, target, True)
    res.shape = shape
    res.shapes_checked = 1
    return res


def bounded_diam_deg_coverable(
    spec: ProcessSpec,
    target: ProcessConfig,
    k: int,
    d: int,
    n_max: int,
    max_iterations: Optional[int] = None,
) -> StaticResult:
    cls = BoundedDiamDeg(k, d, n_max)
    check_config(target, spec)
    limited = None
    checked = 0
    for shape in enumerate_bounded_graphs(k, d, n_max):
        checked += 1
        res = fixed_graph_coverable(spec, target, shape, max_iterations)
        if res.coverable:
            res.cls, res.shapes_checked = cls, checked
            return res
        if res.verdict is Verdict.LIMIT_EXCEEDED:
            limited = res
    verdict = Verdict.LIMIT_EXCEEDED if limited else Verdict.UNCOVERABLE
    return StaticResult(verdict, cls, limited.cover if limited else None, shapes_checked=checked)


def canonical_form(shape: Shape) -> tuple:
    """Isomorphism-invariant key: minimal relabelled edge list.

    Vertices are first ordered by decreasing degree, so only permutations
    inside each degree class are tried.
    """
    if shape.n > MAX_ENUMERATION_VERTICES:
        raise ValueError(f"canonical forms are limited to {MAX_ENUMERATION_VERTICES} vertices")
    by_degree: dict[int, list[int]] = {}
    for v in shape.vertices:
        by_degree.setdefault(shape.degree(v), []).append(v)
    classes = [by_degree[deg] for deg in sorted(by_degree, reverse=True)]
    best = None
    for perms in itertools.product(*(itertools.permutations(c) for c in classes)):
        order = [v for p in perms for v in p]
        pos = {v: i for i, v in enumerate(order)}
        key = tuple(sorted((min(pos[u], pos[v]), max(pos[u], pos[v])) for u, v in shape.edges))
        if best is None or key < best:
            best = key
    return (shape.n, best)


def enumerate_bounded_graphs(k: int, d: int, n_max: int) -> list[Shape]:
    """Connected graphs with diameter <= k and degree <= d, one per isomorphism class.

    Grown vertex by vertex (every connected graph has a vertex whose
    removal keeps it connected, and degree bounds are inherited), then
    filtered on diameter, which is not inherited.
    """
    if n_max > MAX_ENUMERATION_VERTICES:
        raise ValueError(f"n_max is limited to {MAX_ENUMERATION_VERTICES}")
    level = {canonical_form(Shape(1)): Shape(1)}
    connected = [Shape(1)]
    for _ in range(1, n_max):
        nxt: dict = {}
        for g in level.values():
            free = [v for v in g.vertices if g.degree(v) < d]
            for r in range(1, min(d, len(free)) + 1):
                for nbhd in itertools.combinations(free, r):
                    h = g.extend(nbhd)
                    nxt.setdefault(canonical_form(h), h)
        level = {key: nxt[key] for key in sorted(nxt)}
        connected.extend(level.values())
    return [g for g in connected if g.diameter() <= k]
