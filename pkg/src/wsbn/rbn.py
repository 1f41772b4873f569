"""Coverability under reconfiguration semantics.

With links free to change between broadcasts, a receive on ``a`` is
usable as soon as *some* node can be driven into a configuration that
broadcasts ``a``: a fresh copy of that node's run can be attached next to
the receiver.  The check therefore reduces to plain process-level
coverability over a process whose receive rules are unlocked letter by
letter until nothing changes.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Optional

from .order import CoverResult, Verdict, backward_coverability
from .process import ProcessConfig, ProcessSpec, ProcessWSTS, check_config, min_enabling


@dataclass(frozen=True)
class UnlockState:
    """Progress of the unlocking loop.

    ``sub_alphabet`` holds the letters whose receives are still locked;
    ``active_spec`` is the current process (all broadcasts plus the
    receives of unlocked letters).
    """

    spec: ProcessSpec
    sub_alphabet: frozenset
    active_spec: ProcessSpec
    iteration: int
    unlock_order: tuple = field(default=(), compare=False)

    @property
    def unlocked(self) -> frozenset:
        return unlocked_letters(self)


def unlocked_letters(state: UnlockState) -> frozenset:
    return frozenset(state.spec.alphabet) - state.sub_alphabet


@dataclass
class RBNResult:
    verdict: Verdict
    state: UnlockState
    final: Optional[CoverResult] = None
    inner_calls: int = 0

    @property
    def coverable(self) -> bool:
        return self.verdict is Verdict.COVERABLE


def _initial_state(spec: ProcessSpec) -> UnlockState:
    active = replace(spec, transitions=spec.broadcasts())
    return UnlockState(spec, frozenset(spec.alphabet), active, 0)


def saturate(
    spec: ProcessSpec,
    max_iterations: Optional[int] = None,
    on_iteration: Optional[Callable[[UnlockState], None]] = None,
) -> tuple[UnlockState, bool, int]:
    """Run the unlocking loop to its fixpoint.

    Returns the last state, whether the fixpoint was reached (false when
    an inner coverability call hit ``max_iterations``) and the number of
    inner calls made.
    """
    state = _initial_state(spec)
    calls = 0
    while True:
        ts = ProcessWSTS(state.active_spec)
        sub = set(state.sub_alphabet)
        added: list = []
        newly: list = []
        for a in spec.alphabet:
            if a not in state.sub_alphabet:
                continue
            for t in spec.broadcasts(a):
                if a not in sub:
                    # already unlocked this round; R_a is in AddT
                    break
                for c in min_enabling(t):
                    calls += 1
                    res = backward_coverability(ts, [c], max_iterations)
                    if res.verdict is Verdict.LIMIT_EXCEEDED:
                        return state, False, calls
                    if res.coverable:
                        added.extend(spec.receives(a))
                        sub.discard(a)
                        newly.append(a)
                        break
        state = UnlockState(
            spec,
            frozenset(sub),
            replace(state.active_spec, transitions=state.active_spec.transitions + tuple(added)),
            state.iteration + 1,
            state.unlock_order + tuple(newly),
        )
        if on_iteration is not None:
            on_iteration(state)
        if not added:
            return state, True, calls


def rbn_coverable(
    spec: ProcessSpec, target: ProcessConfig, max_iterations: Optional[int] = None
) -> RBNResult:
    check_config(target, spec)
    state, done, calls = saturate(spec, max_iterations)
    if not done:
        return RBNResult(Verdict.LIMIT_EXCEEDED, state, None, calls)
    final = backward_coverability(ProcessWSTS(state.active_spec), [target], max_iterations)
    return RBNResult(final.verdict, state, final, calls + 1)
