"""Process descriptions: finite-state labelled systems and VASS.

A finite-state process is handled as a VASS of dimension 0, so every
operation below has one code path.  Configurations are ordered by state
equality and componentwise comparison of the counters.

User-supplied process models plugged into the engines must satisfy the
same strong compatibility requirement as the shipped ones: if ``c <= d``
and a rule with label ``l`` is enabled at ``c``, then some rule with
label ``l`` is enabled at ``d`` and yields a configuration dominating
the one reached from ``c``, in a single step.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Optional

from .order import CoverResult, backward_coverability, minimize

BROADCAST = "broadcast"
RECEIVE = "receive"
FINITE = "finite"
VASS = "vass"


class SpecError(ValueError):
    """Invalid process description or a value that does not belong to it."""


@dataclass(frozen=True, order=True)
class ActionLabel:
    kind: str
    letter: str

    def __post_init__(self):
        if self.kind not in (BROADCAST, RECEIVE):
            raise SpecError(f"unknown action kind {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> "ActionLabel":
        if text.startswith("!!"):
            return cls(BROADCAST, text[2:])
        if text.startswith("??"):
            return cls(RECEIVE, text[2:])
        raise SpecError(f"action label must start with '!!' or '??': {text!r}")

    def __str__(self) -> str:
        return ("!!" if self.kind == BROADCAST else "??") + self.letter


def broadcast(letter: str) -> ActionLabel:
    return ActionLabel(BROADCAST, letter)


def receive(letter: str) -> ActionLabel:
    return ActionLabel(RECEIVE, letter)


@dataclass(frozen=True, order=True)
class ProcessConfig:
    """A node's local configuration: control state plus counter vector."""

    state: str
    counters: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "counters", tuple(int(x) for x in self.counters))
        if any(x < 0 for x in self.counters):
            raise SpecError(f"negative counter in {self}")

    def __str__(self) -> str:
        if not self.counters:
            return self.state
        return f"{self.state}:[{','.join(map(str, self.counters))}]"


@dataclass(frozen=True)
class TransitionRule:
    id: str
    src: str
    label: ActionLabel
    dst: str
    vector: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vector", tuple(int(x) for x in self.vector))

    @property
    def is_broadcast(self) -> bool:
        return self.label.kind == BROADCAST

    @property
    def is_receive(self) -> bool:
        return self.label.kind == RECEIVE

    def shape(self) -> tuple:
        return (self.src, self.label, self.vector, self.dst)

    def __str__(self) -> str:
        vec = f" {list(self.vector)}" if self.vector else ""
        return f"{self.id}: {self.src} --{self.label}{vec}--> {self.dst}"


@dataclass(frozen=True)
class ProcessSpec:
    """Finite description ``(Q, Σ, Q0, Δ)`` of a process.

    Transitions whose (src, label, vector, dst) coincide are merged,
    keeping the first id.
    """

    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    initial: tuple[str, ...]
    transitions: tuple[TransitionRule, ...] = ()
    kind: str = FINITE
    dimension: int = 0
    _by_id: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        for name in ("states", "alphabet", "initial", "transitions"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if self.kind not in (FINITE, VASS):
            raise SpecError(f"kind must be 'finite' or 'vass', got {self.kind!r}")
        if self.kind == FINITE and self.dimension != 0:
            raise SpecError("finite processes have dimension 0")
        if self.dimension < 0:
            raise SpecError("dimension must be non-negative")
        _unique(self.states, "state")
        _unique(self.alphabet, "letter")
        if not self.initial:
            raise SpecError("at least one initial state is required")
        known = set(self.states)
        for q in self.initial:
            if q not in known:
                raise SpecError(f"initial state {q!r} is not declared")
        seen_ids: set[str] = set()
        seen_shapes: set[tuple] = set()
        kept = []
        for t in self.transitions:
            if t.id in seen_ids:
                raise SpecError(f"duplicate transition id {t.id!r}")
            seen_ids.add(t.id)
            for end in (t.src, t.dst):
                if end not in known:
                    raise SpecError(f"transition {t.id!r} uses undeclared state {end!r}")
            if t.label.letter not in self.alphabet:
                raise SpecError(f"transition {t.id!r} uses undeclared letter {t.label.letter!r}")
            if len(t.vector) != self.dimension:
                raise SpecError(
                    f"transition {t.id!r} has vector of length {len(t.vector)}, expected {self.dimension}"
                )
            if t.shape() in seen_shapes:
                continue
            seen_shapes.add(t.shape())
            kept.append(t)
        object.__setattr__(self, "transitions", tuple(kept))
        object.__setattr__(self, "_by_id", {t.id: t for t in kept})

    def rule(self, rule_id: str) -> TransitionRule:
        return self._by_id[rule_id]

    def rules_with(self, label: ActionLabel) -> tuple[TransitionRule, ...]:
        return tuple(t for t in self.transitions if t.label == label)

    def broadcasts(self, letter: Optional[str] = None) -> tuple[TransitionRule, ...]:
        """``B_a`` for one letter, or every broadcast rule."""
        return tuple(t for t in self.transitions if t.is_broadcast and letter in (None, t.label.letter))

    def receives(self, letter: Optional[str] = None) -> tuple[TransitionRule, ...]:
        """``R_a`` for one letter, or every receive rule (``Rec``)."""
        return tuple(t for t in self.transitions if t.is_receive and letter in (None, t.label.letter))

    def config(self, state: str, counters: Iterable[int] = ()) -> ProcessConfig:
        c = ProcessConfig(state, tuple(counters))
        check_config(c, self)
        return c

    def initial_configs(self) -> tuple[ProcessConfig, ...]:
        zero = (0,) * self.dimension
        return tuple(ProcessConfig(q, zero) for q in self.initial)


def _unique(items, what):
    seen = set()
    for x in items:
        if x in seen:
            raise SpecError(f"duplicate {what} {x!r}")
        seen.add(x)


def check_config(c: ProcessConfig, spec: ProcessSpec) -> ProcessConfig:
    if c.state not in spec.states:
        raise SpecError(f"state {c.state!r} is not declared")
    if len(c.counters) != spec.dimension:
        raise SpecError(f"configuration {c} has {len(c.counters)} counters, expected {spec.dimension}")
    return c


def config_leq(c1: ProcessConfig, c2: ProcessConfig) -> bool:
    if len(c1.counters) != len(c2.counters):
        raise SpecError(f"configurations {c1} and {c2} come from different processes")
    return c1.state == c2.state and all(a <= b for a, b in zip(c1.counters, c2.counters))


def step(c: ProcessConfig, t: TransitionRule) -> Optional[ProcessConfig]:
    """Fire ``t`` at ``c``; ``None`` when it is not enabled."""
    if c.state != t.src:
        return None
    after = tuple(u + v for u, v in zip(c.counters, t.vector))
    if any(x < 0 for x in after):
        return None
    return ProcessConfig(t.dst, after)


def enabled(c: ProcessConfig, rules: Iterable[TransitionRule]) -> list[TransitionRule]:
    return [t for t in rules if step(c, t) is not None]


def min_enabling(t: TransitionRule) -> tuple[ProcessConfig, ...]:
    return (ProcessConfig(t.src, tuple(max(0, -v) for v in t.vector)),)


def rule_predecessor(c: ProcessConfig, t: TransitionRule) -> Optional[ProcessConfig]:
    """Least configuration from which ``t`` leads into ``↑c``."""
    if t.dst != c.state:
        return None
    return ProcessConfig(t.src, tuple(max(0, -v, u - v) for u, v in zip(c.counters, t.vector)))


def pre_basis_labelled(c: ProcessConfig, label: ActionLabel, spec: ProcessSpec) -> tuple[ProcessConfig, ...]:
    preds = (rule_predecessor(c, t) for t in spec.rules_with(label))
    return minimize((p for p in preds if p is not None), config_leq)


def pre_basis(c: ProcessConfig, spec: ProcessSpec) -> tuple[ProcessConfig, ...]:
    preds = (rule_predecessor(c, t) for t in spec.transitions)
    return minimize((p for p in preds if p is not None), config_leq)


def minimal_configs(spec: ProcessSpec) -> tuple[ProcessConfig, ...]:
    zero = (0,) * spec.dimension
    return tuple(ProcessConfig(q, zero) for q in spec.states)


def init_covers(b: ProcessConfig, spec: ProcessSpec) -> bool:
    # initial counters are all zero, so domination forces b.counters == 0
    return b.state in spec.initial and not any(b.counters)


def restrict_transitions(spec: ProcessSpec, keep: Iterable[str]) -> ProcessSpec:
    keep = set(keep)
    unknown = keep - set(spec._by_id)
    if unknown:
        raise SpecError(f"unknown transition ids: {sorted(unknown)}")
    return replace(spec, transitions=tuple(t for t in spec.transitions if t.id in keep))


def receive_complete(spec: ProcessSpec) -> bool:
    """Every state can receive every broadcastable letter from every configuration.

    This is what makes blocking broadcasts monotone on growing graphs: an
    extra neighbour can never veto a broadcast.
    """
    letters = {t.label.letter for t in spec.broadcasts()}
    for q in spec.states:
        for a in letters:
            if not any(t.src == q and all(v >= 0 for v in t.vector) for t in spec.receives(a)):
                return False
    return True


def complete_receives(spec: ProcessSpec) -> ProcessSpec:
    """Add ``q --??a--> q`` for every state lacking a receive on ``a``.

    Turns blocking broadcasts into "ignore" semantics.  Only defined for
    finite-state processes, where a rule from ``q`` is always enabled at ``q``.
    """
    if spec.kind != FINITE:
        raise SpecError("--complete-receives is only available for finite-state models")
    ids = {t.id for t in spec.transitions}
    extra = []
    for q in spec.states:
        for a in spec.alphabet:
            if any(t.src == q for t in spec.receives(a)):
                continue
            rid = f"_ignore_{q}_{a}"
            while rid in ids:
                rid += "_"
            ids.add(rid)
            extra.append(TransitionRule(rid, q, receive(a), q))
    return replace(spec, transitions=spec.transitions + tuple(extra))


class ProcessWSTS:
    """The labelled WSTS ``TS(P)`` as seen by the backward engine."""

    def __init__(self, spec: ProcessSpec):
        self.spec = spec

    def leq(self, a: ProcessConfig, b: ProcessConfig) -> bool:
        return config_leq(a, b)

    def pre_basis(self, c: ProcessConfig) -> tuple[ProcessConfig, ...]:
        return pre_basis(c, self.spec)

    def init_covers(self, c: ProcessConfig) -> bool:
        return init_covers(c, self.spec)


def process_coverable(
    spec: ProcessSpec, target: ProcessConfig, max_iterations: Optional[int] = None
) -> CoverResult:
    """Coverability in ``TS(P)``, ignoring network semantics entirely."""
    check_config(target, spec)
    return backward_coverability(ProcessWSTS(spec), [target], max_iterations)
