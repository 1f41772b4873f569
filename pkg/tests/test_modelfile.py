import json

import pytest
from hypothesis import given, settings

from conftest import finite_specs
from wsbn.graphs import Shape
from wsbn.modelfile import Model, ModelError, dump_model, model_to_dict, parse_model, parse_target
from wsbn.process import ProcessConfig

GOOD = """\
kind: vass
dimension: 2
states: [p, q]
initial: [p]
alphabet: [a]
transitions:
  - {id: t, from: p, kind: broadcast, letter: a, vector: [-2, 1], to: q}
topology:
  vertices: [x, y, z]
  edges: [[x, y], [y, z]]
"""


def test_parse_good_model():
    m = parse_model(GOOD)
    assert m.spec.dimension == 2 and m.spec.transitions[0].vector == (-2, 1)
    assert m.topology == Shape.path(3) and m.vertex_names == ("x", "y", "z")


def test_json_is_accepted():
    doc = {"states": ["q"], "initial": ["q"], "alphabet": ["a"], "transitions": []}
    assert parse_model(json.dumps(doc)).spec.kind == "finite"


@pytest.mark.parametrize(
    "edit,field,line",
    [
        (("to: q}", "to: zz}"), "transitions[0].to", 7),
        (("letter: a,", "letter: b,"), "transitions[0].letter", 7),
        (("vector: [-2, 1]", "vector: [1]"), "transitions[0].vector", 7),
        (("initial: [p]", "initial: [r]"), "initial", 4),
        (("alphabet: [a]", "alphabet: [a]\ncolour: red"), "colour", 6),
        (("kind: vass", "kind: petri"), "kind", 1),
        (("edges: [[x, y], [y, z]]", "edges: [[x, w]]"), "topology.edges[0]", 10),
        (("{id: t,", "{id: t, weight: 3,"), "transitions[0].weight", 7),
    ],
)
def test_errors_name_field_and_line(edit, field, line):
    with pytest.raises(ModelError) as info:
        parse_model(GOOD.replace(*edit))
    assert info.value.field == field and info.value.line == line
    assert f"field '{field}'" in str(info.value) and f"line {line}" in str(info.value)


def test_duplicate_transition_id():
    text = GOOD.replace("transitions:\n", "transitions:\n  - {id: t, from: q, kind: receive, letter: a, vector: [0, 0], to: q}\n")
    with pytest.raises(ModelError) as info:
        parse_model(text)
    assert info.value.field == "transitions[1].id"


def test_syntax_error_and_empty():
    with pytest.raises(ModelError):
        parse_model("states: [a")
    with pytest.raises(ModelError):
        parse_model("")


def test_targets():
    spec = parse_model(GOOD).spec
    assert parse_target("q:[1, 2]", spec) == ProcessConfig("q", (1, 2))
    assert parse_target("p", spec) == ProcessConfig("p", (0, 0))
    for bad in ("q:[1]", "zz", "q:[a,b]", "q:[1,-1]", ""):
        with pytest.raises(ModelError):
            parse_target(bad, spec)


def test_roundtrip_good_model():
    m = parse_model(GOOD)
    again = parse_model(dump_model(m))
    assert again == m


@settings(max_examples=100, deadline=None)
@given(finite_specs())
def test_roundtrip_random_specs(spec):
    m = Model(spec)
    assert parse_model(dump_model(m)).spec == spec
    assert model_to_dict(parse_model(dump_model(m))) == model_to_dict(m)
