"""Upward-closed sets over a well-quasi-order and backward coverability.

An upward-closed set is represented by a finite antichain of minimal
elements (its basis).  :func:`backward_coverability` saturates the basis
under one-step predecessors until a fixpoint; termination is guaranteed
whenever the ordering is a wqo.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Generic, Hashable, Iterable, Optional, Protocol, Sequence, TypeVar

C = TypeVar("C", bound=Hashable)

Leq = Callable[[C, C], bool]


class Verdict(str, enum.Enum):
    COVERABLE = "COVERABLE"
    UNCOVERABLE = "UNCOVERABLE"
    LIMIT_EXCEEDED = "LIMIT_EXCEEDED"

    def __str__(self) -> str:
        return self.value


class OrderedDomain(Protocol[C]):
    def leq(self, a: C, b: C) -> bool: ...


class EffectiveWSTS(OrderedDomain[C], Protocol[C]):
    """What the saturation engine needs from a transition system.

    ``pre_basis(c)`` must return a finite basis of the one-step predecessors
    of ``↑c`` and the ordering must be compatible with the transitions
    (a larger configuration can simulate every step of a smaller one with
    the same label).  ``init_covers(b)`` is true iff some initial
    configuration dominates ``b``.
    """

    def pre_basis(self, c: C) -> Iterable[C]: ...

    def init_covers(self, c: C) -> bool: ...


def _leq_of(domain) -> Leq:
    return domain if callable(domain) and not hasattr(domain, "leq") else domain.leq


def minimize(candidates: Iterable[C], domain) -> tuple[C, ...]:
    """Return the antichain of minimal candidates, in first-seen order.

    ``domain`` is either an object with a ``leq`` method or a bare binary
    predicate.  Among equivalent elements the first one encountered wins.
    """
    leq = _leq_of(domain)
    kept: list[C] = []
    for c in candidates:
        if any(leq(k, c) for k in kept):
            continue
        kept = [k for k in kept if not leq(c, k)]
        kept.append(c)
    return tuple(kept)


def basis_contains(basis: Iterable[C], c: C, domain) -> bool:
    leq = _leq_of(domain)
    return any(leq(b, c) for b in basis)


def basis_subsumed(a: Iterable[C], b: Sequence[C], domain) -> bool:
    """True iff ``↑a ⊆ ↑b``."""
    return all(basis_contains(b, x, domain) for x in a)


@dataclass
class CoverResult(Generic[C]):
    """Outcome of a backward saturation run.

    ``witness`` is a basis element dominated by an initial configuration
    (not claimed to be minimal).  ``parents`` maps every element ever
    added to the element whose predecessor set produced it, so the
    chain from ``witness`` back to the target can be recovered.
    """

    verdict: Verdict
    iterations: int
    basis: tuple[C, ...]
    witness: Optional[C] = None
    max_basis_size: int = 0
    parents: dict = field(default_factory=dict, repr=False)
    history: list = field(default_factory=list, repr=False)

    @property
    def coverable(self) -> bool:
        return self.verdict is Verdict.COVERABLE

    def chain(self) -> list[C]:
        """Elements from the witness back to a target element."""
        if self.witness is None:
            return []
        out = [self.witness]
        while self.parents.get(out[-1]) is not None:
            out.append(self.parents[out[-1]])
        return out


def backward_coverability(
    sys: EffectiveWSTS,
    target: Iterable[C],
    max_iterations: Optional[int] = None,
    keep_history: bool = False,
) -> CoverResult:
    """Decide whether ``↑target`` is coverable from an initial configuration.

    Each iteration expands only the elements added by the previous one;
    an element dropped by minimization is dominated by a kept one whose
    predecessors cover its own, so this is equivalent to re-expanding the
    whole basis.
    """
    basis = minimize(target, sys)
    parents: dict = {b: None for b in basis}
    history = [basis] if keep_history else []
    max_size = len(basis)

    for b in basis:
        if sys.init_covers(b):
            return CoverResult(Verdict.COVERABLE, 0, basis, b, max_size, parents, history)

    frontier = basis
    iterations = 0
    while frontier:
        if max_iterations is not None and iterations >= max_iterations:
            return CoverResult(Verdict.LIMIT_EXCEEDED, iterations, basis, None, max_size, parents, history)
        iterations += 1
        fresh: list[C] = []
        for c in frontier:
            for p in sys.pre_basis(c):
                if basis_contains(basis, p, sys) or basis_contains(fresh, p, sys):
                    continue
                fresh = [f for f in fresh if not sys.leq(p, f)]
                fresh.append(p)
                parents.setdefault(p, c)
        if not fresh:
            break
        basis = tuple(b for b in basis if not any(sys.leq(f, b) for f in fresh)) + tuple(fresh)
        max_size = max(max_size, len(basis))
        if keep_history:
            history.append(basis)
        for f in fresh:
            if sys.init_covers(f):
                return CoverResult(Verdict.COVERABLE, iterations, basis, f, max_size, parents, history)
        frontier = tuple(fresh)

    return CoverResult(Verdict.UNCOVERABLE, iterations, basis, None, max_size, parents, history)
