"""Model files: one YAML (or JSON) document describing a process.

Example::

    kind: vass
    dimension: 1
    states: [q0]
    initial: [q0]
    alphabet: [a]
    transitions:
      - {id: send, from: q0, kind: broadcast, letter: a, vector: [0], to: q0}
      - {id: recv, from: q0, kind: receive, letter: a, vector: [1], to: q0}
    topology:              # optional, used by fixed-graph queries
      vertices: [x, y]
      edges: [[x, y]]
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

import yaml

from .graphs import Shape
from .process import (
    FINITE,
    VASS,
    ActionLabel,
    ProcessConfig,
    ProcessSpec,
    SpecError,
    TransitionRule,
    check_config,
)

TOP_FIELDS = {"kind", "dimension", "states", "initial", "alphabet", "transitions", "topology"}
RULE_FIELDS = {"id", "from", "kind", "letter", "vector", "to"}
TOPOLOGY_FIELDS = {"vertices", "edges"}


class ModelError(ValueError):
    def __init__(self, message: str, field: Optional[str] = None, line: Optional[int] = None):
        self.field = field
        self.line = line
        where = []
        if field:
            where.append(f"field '{field}'")
        if line:
            where.append(f"line {line}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)


@dataclass(frozen=True)
class Model:
    spec: ProcessSpec
    topology: Optional[Shape] = None
    vertex_names: tuple = ()


_SCALARS = yaml.SafeLoader("")


def _line(node) -> int:
    return node.start_mark.line + 1


def _plain(node):
    """Node tree to Python values, remembering line numbers of mapping keys."""
    if isinstance(node, yaml.MappingNode):
        out = _LinedDict()
        for k, v in node.value:
            key = _plain(k)
            if key in out:
                raise ModelError("duplicate key", str(key), _line(k))
            out[key] = _plain(v)
            out.lines[key] = _line(k)
        out.line = _line(node)
        return out
    if isinstance(node, yaml.SequenceNode):
        out = _LinedList(_plain(v) for v in node.value)
        out.lines = [_line(v) for v in node.value]
        out.line = _line(node)
        return out
    return _SCALARS.construct_object(node, deep=True)


class _LinedDict(dict):
    line = 0

    def __init__(self):
        super().__init__()
        self.lines: dict = {}


class _LinedList(list):
    line = 0
    lines: list = []


def _expect(value, kind, field, line):
    if not isinstance(value, kind):
        name = {list: "a list", dict: "a mapping", str: "a string", int: "an integer"}.get(kind, str(kind))
        raise ModelError(f"expected {name}, got {type(value).__name__}", field, line)
    return value


def _names(doc, key, required=True):
    if key not in doc:
        if required:
            raise ModelError("missing required field", key, doc.line)
        return []
    items = _expect(doc[key], list, key, doc.lines[key])
    for i, x in enumerate(items):
        if isinstance(x, bool) or not isinstance(x, (str, int)):
            raise ModelError("expected an identifier", f"{key}[{i}]", items.lines[i])
    return [str(x) for x in items]


def parse_model(text: str) -> Model:
    try:
        root = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        raise ModelError(f"not valid YAML/JSON: {getattr(exc, 'problem', exc)}", None,
                         mark.line + 1 if mark else None) from None
    if root is None:
        raise ModelError("empty model file")
    doc = _plain(root)
    _expect(doc, dict, "<document>", 1)
    for key in doc:
        if key not in TOP_FIELDS:
            raise ModelError("unknown field", str(key), doc.lines[key])

    kind = doc.get("kind", FINITE)
    if kind not in (FINITE, VASS):
        raise ModelError("must be 'finite' or 'vass'", "kind", doc.lines.get("kind"))
    dim = doc.get("dimension", 0)
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 0:
        raise ModelError("must be a non-negative integer", "dimension", doc.lines.get("dimension"))
    if kind == FINITE and dim:
        raise ModelError("only vass models have counters", "dimension", doc.lines["dimension"])

    states = _names(doc, "states")
    initial = _names(doc, "initial")
    alphabet = _names(doc, "alphabet")

    for key, items in (("states", states), ("alphabet", alphabet)):
        if len(set(items)) != len(items):
            raise ModelError("duplicate entry", key, doc.lines[key])
    if not initial:
        raise ModelError("at least one initial state is required", "initial", doc.lines["initial"])
    for q in initial:
        if q not in states:
            raise ModelError(f"undeclared state {q!r}", "initial", doc.lines["initial"])

    rules = []
    ids: set = set()
    raw_rules = _expect(doc.get("transitions", _LinedList()), list, "transitions", doc.lines.get("transitions"))
    for i, r in enumerate(raw_rules):
        where = f"transitions[{i}]"
        line = raw_rules.lines[i]
        _expect(r, dict, where, line)
        for key in r:
            if key not in RULE_FIELDS:
                raise ModelError("unknown field", f"{where}.{key}", r.lines[key])
        for key in ("id", "from", "kind", "letter", "to"):
            if key not in r:
                raise ModelError("missing required field", f"{where}.{key}", line)
        if str(r["id"]) in ids:
            raise ModelError(f"duplicate transition id {r['id']!r}", f"{where}.id", r.lines["id"])
        ids.add(str(r["id"]))
        if r["kind"] not in ("broadcast", "receive"):
            raise ModelError("must be 'broadcast' or 'receive'", f"{where}.kind", r.lines["kind"])
        vec = r.get("vector", [])
        _expect(vec, list, f"{where}.vector", r.lines.get("vector", line))
        if any(isinstance(x, bool) or not isinstance(x, int) for x in vec):
            raise ModelError("vector entries must be integers", f"{where}.vector", r.lines["vector"])
        if len(vec) != dim:
            raise ModelError(f"vector has length {len(vec)}, expected {dim}", f"{where}.vector",
                             r.lines.get("vector", line))
        for key in ("from", "to"):
            if str(r[key]) not in states:
                raise ModelError(f"undeclared state {r[key]!r}", f"{where}.{key}", r.lines[key])
        if str(r["letter"]) not in alphabet:
            raise ModelError(f"undeclared letter {r['letter']!r}", f"{where}.letter", r.lines["letter"])
        rules.append(
            TransitionRule(str(r["id"]), str(r["from"]), ActionLabel(r["kind"], str(r["letter"])),
                           str(r["to"]), tuple(vec))
        )

    try:
        spec = ProcessSpec(states, alphabet, initial, rules, kind, dim)
    except SpecError as exc:
        raise ModelError(str(exc), None, None) from None

    topology, names = None, ()
    if "topology" in doc:
        topology, names = _parse_topology(doc["topology"], doc.lines["topology"])
    return Model(spec, topology, names)


def _parse_topology(topo, line):
    _expect(topo, dict, "topology", line)
    for key in topo:
        if key not in TOPOLOGY_FIELDS:
            raise ModelError("unknown field", f"topology.{key}", topo.lines[key])
    names = _names(topo, "vertices")
    if not names:
        raise ModelError("at least one vertex is required", "topology.vertices", topo.lines["vertices"])
    if len(set(names)) != len(names):
        raise ModelError("duplicate vertex", "topology.vertices", topo.lines["vertices"])
    index = {v: i for i, v in enumerate(names)}
    edges = []
    raw = _expect(topo.get("edges", _LinedList()), list, "topology.edges", topo.lines.get("edges", line))
    for i, e in enumerate(raw):
        where = f"topology.edges[{i}]"
        if not isinstance(e, list) or len(e) != 2:
            raise ModelError("an edge is a pair of vertices", where, raw.lines[i])
        u, v = (str(x) for x in e)
        for x in (u, v):
            if x not in index:
                raise ModelError(f"undeclared vertex {x!r}", where, raw.lines[i])
        if u == v:
            raise ModelError("self-loops are not allowed", where, raw.lines[i])
        edges.append((index[u], index[v]))
    return Shape(len(names), frozenset(edges)), tuple(names)


def load_model(path) -> Model:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ModelError(f"cannot read {path}: {exc.strerror}") from None
    return parse_model(text)


def model_to_dict(model: Model) -> dict:
    spec = model.spec
    doc: dict[str, Any] = {"kind": spec.kind}
    if spec.kind == VASS:
        doc["dimension"] = spec.dimension
    doc["states"] = list(spec.states)
    doc["initial"] = list(spec.initial)
    doc["alphabet"] = list(spec.alphabet)
    doc["transitions"] = []
    for t in spec.transitions:
        rule = {"id": t.id, "from": t.src, "kind": t.label.kind, "letter": t.label.letter, "to": t.dst}
        if spec.kind == VASS:
            rule["vector"] = list(t.vector)
        doc["transitions"].append(rule)
    if model.topology is not None:
        names = list(model.vertex_names) or [str(v) for v in model.topology.vertices]
        doc["topology"] = {
            "vertices": names,
            "edges": [[names[u], names[v]] for u, v in sorted(model.topology.edges)],
        }
    return doc


def dump_model(model: Model) -> str:
    return yaml.safe_dump(model_to_dict(model), sort_keys=False, default_flow_style=None)


_TARGET = re.compile(r"^\s*([^:\[\]\s]+)\s*(?::\s*\[([^\]]*)\])?\s*$")


def parse_target(text: str, spec: ProcessSpec) -> ProcessConfig:
    """``q`` for finite models, ``q:[n1,n2,...]`` for VASS."""
    m = _TARGET.match(text)
    if not m:
        raise ModelError(f"cannot parse target {text!r}; use 'q' or 'q:[n1,...]'", "target")
    state, vec = m.group(1), m.group(2)
    try:
        counters = tuple(int(x) for x in vec.split(",") if x.strip()) if vec is not None else ()
    except ValueError:
        raise ModelError(f"counters must be integers in {text!r}", "target") from None
    if vec is None and spec.dimension:
        counters = (0,) * spec.dimension
    try:
        return check_config(ProcessConfig(state, counters), spec)
    except SpecError as exc:
        raise ModelError(str(exc), "target") from None
