import random

import pytest

from conftest import make_spec
from _gen import embedding_ref, longest_path_ref, random_graph, random_shape
from wsbn.graphs import (
    LabelledGraph,
    Shape,
    broadcast_step,
    broadcast_successors,
    clique_leq,
    induced_embedding_leq,
    longest_simple_path,
    pointwise_leq,
)
from wsbn.oracle import ExplorationBounds, explore_static
from wsbn.process import ProcessConfig

Q = ProcessConfig


def test_shape_basics():
    s = Shape.path(3)
    assert s.edges == {(0, 1), (1, 2)}
    assert s.diameter() == 2 and s.max_degree() == 2
    assert Shape(2).diameter() is None
    assert Shape.complete(4).is_clique()
    with pytest.raises(ValueError):
        Shape(2, {(0, 2)})
    with pytest.raises(ValueError):
        Shape(2, {(1, 1)})


def test_embedding_examples():
    g = LabelledGraph.on(Shape.path(3), [Q("a"), Q("a"), Q("a")])
    assert induced_embedding_leq(g, g)
    assert not induced_embedding_leq(g, LabelledGraph.clique([Q("a")] * 3))
    assert induced_embedding_leq(LabelledGraph.clique([Q("a")] * 2), g)


def test_embedding_matches_permutation_search():
    rng = random.Random(1)
    labels = [Q("p", (0,)), Q("p", (1,)), Q("q", (0,))]
    for _ in range(300):
        g1 = random_graph(rng, labels, 4)
        g2 = random_graph(rng, labels, 5)
        assert induced_embedding_leq(g1, g2) == embedding_ref(g1, g2)


def test_clique_leq_examples():
    big = LabelledGraph.clique([Q("p", (0,)), Q("q", (3,))])
    assert clique_leq(LabelledGraph.single(Q("q", (1,))), big)
    assert not clique_leq(LabelledGraph.clique([Q("q1")] * 2), LabelledGraph.clique([Q("q1"), Q("q2")]))
    with pytest.raises(ValueError):
        clique_leq(LabelledGraph.on(Shape.path(3), [Q("a")] * 3), big)


def test_clique_leq_matches_embedding():
    rng = random.Random(2)
    for labels in ([Q("x"), Q("y")], [Q("p", (0,)), Q("p", (2,)), Q("q", (1,))]):
        for _ in range(150):
            g1 = LabelledGraph.clique([rng.choice(labels) for _ in range(rng.randint(0, 3))])
            g2 = LabelledGraph.clique([rng.choice(labels) for _ in range(rng.randint(0, 4))])
            assert clique_leq(g1, g2) == induced_embedding_leq(g1, g2)


def test_pointwise_leq():
    s = Shape.path(2)
    assert pointwise_leq(LabelledGraph.on(s, [Q("p", (0,)), Q("q", (1,))]), LabelledGraph.on(s, [Q("p", (1,)), Q("q", (1,))]))
    assert not pointwise_leq(LabelledGraph.on(s, [Q("p", (0,)), Q("q", (1,))]), LabelledGraph.on(s, [Q("q", (1,)), Q("p", (1,))]))


def test_longest_path_examples():
    assert longest_simple_path(Shape(1)) == 0
    for n in range(1, 7):
        assert longest_simple_path(Shape.complete(n)) == n - 1


def test_longest_path_matches_permutation_search():
    rng = random.Random(4)
    for _ in range(150):
        s = random_shape(rng, rng.randint(1, 7), rng.random())
        assert longest_simple_path(s) == longest_path_ref(s)
        k = longest_path_ref(s)
        for j in range(3):
            assert (longest_simple_path(s, stop_above=j) > j) == (k > j)


def test_broadcast_step_examples(sender_receiver):
    send = sender_receiver.broadcasts("a")[0]
    recv = sender_receiver.receives("a")[0]
    g = LabelledGraph.single(Q("b0"))
    assert broadcast_step(g, 0, "a", {0: send}) == LabelledGraph.single(Q("b1"))
    g = LabelledGraph.clique([Q("b0"), Q("r0")])
    assert broadcast_step(g, 0, "a", {0: send, 1: recv}) == LabelledGraph.clique([Q("b1"), Q("r1")])
    g = LabelledGraph.clique([Q("b0"), Q("b1")])
    assert broadcast_step(g, 0, "a", {0: send, 1: recv}) is None
    assert list(broadcast_successors(g, sender_receiver)) == []
    with pytest.raises(ValueError):
        broadcast_step(g, 0, "a", {0: send})
    with pytest.raises(ValueError):
        broadcast_step(g, 0, "a", {0: recv, 1: recv})


def test_successors_replay_through_oracle(sender_receiver):
    res = explore_static(sender_receiver, Q("r1"), Shape.complete(2), ExplorationBounds(2, 0, 3))
    assert res.found and len(res.trace) == 1


def test_successors_cover_every_choice():
    # two receive options at the neighbour give two successors
    spec = make_spec([("b", "!!a", "b"), ("r", "??a", "x"), ("r", "??a", "y")], ["b", "r", "x", "y"], ["b", "r"])
    g = LabelledGraph.clique([Q("b"), Q("r")])
    results = {m.result.labels for m in broadcast_successors(g, spec)}
    assert results == {(Q("b"), Q("x")), (Q("b"), Q("y"))}
