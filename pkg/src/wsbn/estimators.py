"""Estimator-style wrappers around the coverability engines.

``fit`` takes a :class:`~wsbn.process.ProcessSpec` (or a model file
path) and does the work that does not depend on the query; ``predict``
answers a batch of target configurations with one verdict each.
"""
from __future__ import annotations

from pathlib import Path
from typing import Iterable, Optional, Union

from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError
from sklearn.utils.validation import check_is_fitted

from .modelfile import Model, load_model, parse_target
from .oracle import ExplorationBounds, OracleResult, explore_rbn, explore_static
from .order import Verdict, backward_coverability
from .process import ProcessConfig, ProcessSpec, ProcessWSTS, check_config
from .rbn import saturate
from .topology import FixedGraph, TopologyClass, parse_class, static_coverable

__all__ = [
    "NotFittedError",
    "check_spec",
    "check_targets",
    "RBNCoverability",
    "StaticCoverability",
    "BoundedExplorer",
]

SpecLike = Union[ProcessSpec, Model, str, Path]


def check_spec(spec: SpecLike) -> tuple[ProcessSpec, Optional[Model]]:
    """Accept a spec, a parsed model or a path to a model file."""
    if isinstance(spec, ProcessSpec):
        return spec, None
    if isinstance(spec, Model):
        return spec.spec, spec
    if isinstance(spec, (str, Path)):
        model = load_model(spec)
        return model.spec, model
    raise TypeError(f"expected a ProcessSpec, Model or model path, got {type(spec).__name__}")


def check_targets(targets, spec: ProcessSpec) -> list[ProcessConfig]:
    """One target or an iterable of them; strings use the CLI target syntax."""
    if isinstance(targets, (ProcessConfig, str)):
        targets = [targets]
    out = []
    for t in targets:
        c = parse_target(t, spec) if isinstance(t, str) else t
        if not isinstance(c, ProcessConfig):
            raise TypeError(f"target must be a ProcessConfig or string, got {type(t).__name__}")
        out.append(check_config(c, spec))
    return out


class RBNCoverability(BaseEstimator):
    """Coverability under reconfiguration.

    ``fit`` runs the unlocking loop once; each prediction is then a
    single process-level coverability query.
    """

    def __init__(self, max_iterations: Optional[int] = None):
        self.max_iterations = max_iterations

    def fit(self, spec: SpecLike, y=None):
        self.spec_, _ = check_spec(spec)
        self.state_, self.saturated_, self.inner_calls_ = saturate(self.spec_, self.max_iterations)
        self.unlocked_ = self.state_.unlocked
        return self

    def predict(self, targets) -> list[Verdict]:
        check_is_fitted(self, "state_")
        targets = check_targets(targets, self.spec_)
        if not self.saturated_:
            return [Verdict.LIMIT_EXCEEDED] * len(targets)
        ts = ProcessWSTS(self.state_.active_spec)
        return [backward_coverability(ts, [t], self.max_iterations).verdict for t in targets]


class StaticCoverability(BaseEstimator):
    """Coverability on a static topology class.

    ``topology`` is a class string (``clique``, ``path:K``,
    ``diamdeg:K,D,N`` or ``fixed``) or a :class:`TopologyClass`.
    ``fixed`` takes the graph from the fitted model file.
    """

    def __init__(self, topology: Union[str, TopologyClass] = "clique", max_iterations: Optional[int] = None):
        self.topology = topology
        self.max_iterations = max_iterations

    def fit(self, spec: SpecLike, y=None):
        self.spec_, model = check_spec(spec)
        if isinstance(self.topology, TopologyClass):
            self.class_ = self.topology
        elif self.topology == "fixed":
            if model is None or model.topology is None:
                raise ValueError("topology='fixed' needs a model with a topology section")
            self.class_ = FixedGraph(model.topology)
        else:
            self.class_ = parse_class(self.topology)
        self.results_: list = []
        return self

    def predict(self, targets) -> list[Verdict]:
        check_is_fitted(self, "class_")
        targets = check_targets(targets, self.spec_)
        self.results_ = [static_coverable(self.spec_, t, self.class_, self.max_iterations) for t in targets]
        return [r.verdict for r in self.results_]


class BoundedExplorer(BaseEstimator):
    """Explicit-state search; predictions are ``FOUND``/``NOT_FOUND`` statuses."""

    def __init__(self, max_nodes: int = 3, max_counter: int = 3, max_depth: int = 10, semantics: str = "rbn"):
        self.max_nodes = max_nodes
        self.max_counter = max_counter
        self.max_depth = max_depth
        self.semantics = semantics

    def fit(self, spec: SpecLike, y=None):
        if self.semantics not in ("rbn", "static"):
            raise ValueError(f"semantics must be 'rbn' or 'static', got {self.semantics!r}")
        self.spec_, model = check_spec(spec)
        self.shape_ = model.topology if model is not None else None
        if self.semantics == "static" and self.shape_ is None:
            raise ValueError("static exploration needs a model with a topology section")
        self.bounds_ = ExplorationBounds(self.max_nodes, self.max_counter, self.max_depth)
        return self

    def explore(self, targets) -> list[OracleResult]:
        check_is_fitted(self, "bounds_")
        out = []
        for t in check_targets(targets, self.spec_):
            if self.semantics == "static":
                out.append(explore_static(self.spec_, t, self.shape_, self.bounds_))
            else:
                out.append(explore_rbn(self.spec_, t, self.bounds_))
        return out

    def predict(self, targets) -> list[str]:
        return [r.status for r in self.explore(targets)]
